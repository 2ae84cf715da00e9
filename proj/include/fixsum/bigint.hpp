#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fixsum {

/// Exact counting value. Counts produced by the library are never negative;
/// signed intermediates appear only inside transforms that document them
/// (binomial inversion, parity multisection).
using Count = boost::multiprecision::cpp_int;

/// num/den as a double, correct to full double precision for operands of any
/// size. Both values are scaled so the quotient keeps ~128 significant bits
/// before the final rounding.
inline double ratio_as_double(const Count& num, const Count& den) {
  if (den == 0) throw std::domain_error("ratio_as_double: zero denominator");
  if (num == 0) return 0.0;
  const bool negative = (num < 0) != (den < 0);
  const Count n = abs(num);
  const Count d = abs(den);
  const long shift =
      128 - (static_cast<long>(msb(n)) - static_cast<long>(msb(d)));
  const Count scaled = shift >= 0 ? Count(n << shift) : Count(n >> -shift);
  const Count q = scaled / d;
  const double r = std::ldexp(q.convert_to<double>(), static_cast<int>(-shift));
  return negative ? -r : r;
}

/// Natural logarithm of a positive Count.
inline double log_as_double(const Count& x) {
  if (x <= 0) throw std::domain_error("log_as_double: nonpositive argument");
  const long m = static_cast<long>(msb(x));
  if (m <= 52) return std::log(x.convert_to<double>());
  const double top = Count(x >> (m - 52)).convert_to<double>();
  return std::log(top) + static_cast<double>(m - 52) * std::numbers::ln2;
}

/// base^exp for integer base and nonnegative exponent.
inline Count integer_power(long long base, long long exp) {
  if (exp < 0) throw std::domain_error("integer_power: negative exponent");
  Count result = 1;
  Count b = base;
  while (exp > 0) {
    if (exp & 1) result *= b;
    exp >>= 1;
    if (exp > 0) b *= b;
  }
  return result;
}

}  // namespace fixsum
