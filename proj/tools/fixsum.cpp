// fixsum: exact and asymptotic profiles of the fixed-point label sum
// statistic over labeled-structure families, as plot-ready CSV or JSON.

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fixsum/fixsum.hpp"

namespace {

using fixsum::Cell;
using fixsum::Count;
using fixsum::count_cell;
using fixsum::OutputFormat;
using fixsum::OutputSpec;
using fixsum::Table;

constexpr int kExitVerificationMismatch = 1;
constexpr int kExitUnknownName = 2;
constexpr int kExitInvalidArguments = 3;
// Full exact profiles stay cheap up to roughly this size; beyond it the
// sample command leaves the exact_prob column empty.
constexpr int kExactProbableMax = 128;

nlohmann::ordered_json base_metadata(const std::string& command) {
  nlohmann::ordered_json meta;
  meta["command"] = command;
  meta["version"] = fixsum::kVersion;
  return meta;
}

int cmd_families(const OutputSpec& spec) {
  Table table({"id", "exact_C", "nominal_C", "supports_sampling",
               "bruteforce_up_to"});
  for (const auto& f : fixsum::list_families()) {
    const Cell exact_c = f.exact_C_decomposable()
                             ? Cell(static_cast<long long>(*f.exact_C_decomposable()))
                             : Cell(std::monostate{});
    table.add_row({f.id(), exact_c, static_cast<long long>(f.nominal_C()),
                   static_cast<long long>(f.supports_sampling() ? 1 : 0),
                   static_cast<long long>(f.supports_bruteforce_up_to())});
  }
  fixsum::emit(table, base_metadata("families"), spec);
  return 0;
}

int cmd_profile(const std::string& family_id, int n, long long r_max,
                const OutputSpec& spec) {
  const auto& family = fixsum::find_family(family_id);
  const auto profile = fixsum::exact_profile(family, n, r_max);
  const long long r_hi =
      (r_max < 0) ? profile.support_max() : std::min(r_max, profile.support_max());
  Table table({"r", "f_n_r"});
  for (long long r = 0; r <= r_hi; ++r)
    table.add_row({r, count_cell(profile.at(r))});
  auto meta = base_metadata("profile");
  meta["family"] = family.id();
  meta["n"] = n;
  fixsum::emit(table, meta, spec);
  return 0;
}

int cmd_kernel(double mu, double alpha_min, double alpha_max, double step,
               const OutputSpec& spec) {
  if (!(step > 0.0)) throw std::domain_error("kernel: step must be positive");
  if (!(mu > 0.0)) throw std::domain_error("kernel: mu must be positive");
  if (!(alpha_min > 0.0) || alpha_min > alpha_max)
    throw std::domain_error("kernel: need 0 < alpha_min <= alpha_max");
  Table table({"alpha", "c2", "c3", "c4", "c5", "c6", "K_mu", "predicted_scaled"});
  const fixsum::KernelParams params{mu, 1e-12};
  const auto steps = static_cast<long long>(
      std::floor((alpha_max - alpha_min) / step + 1e-9));
  for (long long i = 0; i <= steps; ++i) {
    const double alpha = alpha_min + static_cast<double>(i) * step;
    table.add_row({alpha, fixsum::cutoff_c(2, alpha), fixsum::cutoff_c(3, alpha),
                   fixsum::cutoff_c(4, alpha), fixsum::cutoff_c(5, alpha),
                   fixsum::cutoff_c(6, alpha), fixsum::kernel_value(params, alpha),
                   fixsum::predicted_scaled(params, alpha)});
  }
  auto meta = base_metadata("kernel");
  meta["mu"] = mu;
  fixsum::emit(table, meta, spec);
  return 0;
}

int cmd_poisson(const std::string& family_id, int n, int k_max,
                const OutputSpec& spec) {
  const auto& family = fixsum::find_family(family_id);
  const auto diag = fixsum::estimate_parameters(family, n, k_max);
  Table table({"k", "observed", "poisson", "rho_hat", "C_hat", "lambda_hat",
               "mu_hat"});
  for (const auto& row : diag.pmf_rows)
    table.add_row({static_cast<long long>(row.k), row.observed, row.poisson,
                   diag.rho_hat, diag.C_hat, diag.lambda_hat, diag.mu_hat});
  auto meta = base_metadata("poisson");
  meta["family"] = family.id();
  meta["n"] = n;
  fixsum::emit(table, meta, spec);
  return 0;
}

int cmd_compare(const std::string& family_id, int n, const std::string& mu_text,
                double alpha_min, double alpha_max, const OutputSpec& spec) {
  const auto& family = fixsum::find_family(family_id);
  double mu = 0.0;
  if (mu_text == "auto") {
    // The measured kernel parameter mu_hat = n g(2,n)/g(1,n).
    const Count g1 = family.with_fixed_label_set(1, n);
    if (g1 == 0) throw std::domain_error("compare: g(1,n) = 0, no finite mu");
    mu = fixsum::ratio_as_double(Count(n) * family.with_fixed_label_set(2, n), g1);
  } else {
    try {
      size_t used = 0;
      mu = std::stod(mu_text, &used);
      if (used != mu_text.size()) throw std::invalid_argument(mu_text);
    } catch (const std::exception&) {
      throw std::domain_error("compare: mu must be a number or 'auto'");
    }
  }
  const auto sp = fixsum::scaled_profile(family, n, alpha_min, alpha_max, mu);
  Table table({"row_type", "r", "alpha", "scaled", "predicted", "abs_error"});
  double deviation = 0.0;
  for (const auto& row : sp.rows) {
    const double err = std::abs(row.scaled - row.predicted);
    deviation = std::max(deviation, err);
    table.add_row({std::string("grid"), row.r, row.alpha, row.scaled,
                   row.predicted, err});
  }
  table.add_row({std::string("summary"), std::monostate{}, std::monostate{},
                 std::monostate{}, std::monostate{}, deviation});
  auto meta = base_metadata("compare");
  meta["family"] = family.id();
  meta["n"] = n;
  meta["mu"] = mu;
  meta["gap_deviation"] = deviation;
  fixsum::emit(table, meta, spec);
  return 0;
}

int cmd_oracle(const std::string& family_id, int n, const OutputSpec& spec) {
  const auto& family = fixsum::find_family(family_id);
  const auto brute = fixsum::brute_force_profile(family, n);
  const auto exact = fixsum::exact_profile(family, n);
  std::map<long long, int> keys;
  for (const auto& [r, c] : brute.values) keys[r] = 1;
  for (const auto& [r, c] : exact.values) keys[r] = 1;
  Table table({"r", "exact", "brute_force", "diff"});
  bool mismatch = false;
  for (const auto& [r, ignored] : keys) {
    const Count e = exact.at(r);
    const Count b = brute.at(r);
    const Count diff = e - b;
    if (diff != 0) mismatch = true;
    table.add_row({r, count_cell(e), count_cell(b), count_cell(diff)});
  }
  auto meta = base_metadata("oracle");
  meta["family"] = family.id();
  meta["n"] = n;
  meta["match"] = !mismatch;
  fixsum::emit(table, meta, spec);
  return mismatch ? kExitVerificationMismatch : 0;
}

int cmd_sample(const std::string& family_id, int n, uint64_t trials, uint64_t seed,
               bool conditioned, const OutputSpec& spec) {
  const auto& family = fixsum::find_family(family_id);
  fixsum::SampleConfig config{family.id(), n, trials, seed, conditioned};
  const auto hist = fixsum::empirical_distribution(config);

  std::optional<fixsum::Profile> profile;
  Count mass = 0;
  if (n <= kExactProbableMax) {
    profile = fixsum::exact_profile(family, n);
    mass = family.total(n);
    if (conditioned) mass -= family.fixed_point_free(n);
  }

  Table table({"r", "count", "empirical_prob", "exact_prob", "stderr", "seed",
               "rejections"});
  for (const auto& [r, c] : hist.counts) {
    Cell exact_prob = std::monostate{};
    if (profile) exact_prob = fixsum::ratio_as_double(profile->at(r), mass);
    table.add_row({r, static_cast<long long>(c), hist.probability(r), exact_prob,
                   hist.standard_error(r), static_cast<long long>(seed),
                   static_cast<long long>(hist.rejections)});
  }
  auto meta = base_metadata("sample");
  meta["family"] = family.id();
  meta["n"] = n;
  meta["trials"] = trials;
  meta["seed"] = seed;
  meta["conditioned"] = conditioned;
  meta["rejections"] = hist.rejections;
  meta["accepted"] = hist.accepted();
  fixsum::emit(table, meta, spec);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::string> verbs = {"families", "profile", "kernel",
                                          "poisson",  "compare", "oracle",
                                          "sample"};
  if (argc > 1 && argv[1][0] != '-') {
    bool known = false;
    for (const auto& v : verbs) known = known || v == argv[1];
    if (!known) {
      std::cerr << "unknown command: " << argv[1] << '\n';
      return kExitUnknownName;
    }
  }

  CLI::App app{"Exact and asymptotic fixed-point-sum profiles"};
  app.require_subcommand(1);

  std::string format = "csv";
  OutputSpec spec;
  app.add_option("--format", format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", spec.out_path, "Write output to a file instead of stdout");
  app.add_option("--precision", spec.precision,
                 "Significant digits for real columns")
      ->check(CLI::Range(1, 17));

  std::string family_id;
  int n = 0;
  long long r_max = -1;
  double mu = 1.0, alpha_min = 0.0, alpha_max = 0.0, step = 0.0;
  std::string mu_text;
  int k_max = 6;
  uint64_t trials = 0, seed = 0;
  bool conditioned = false;

  auto* families_cmd = app.add_subcommand("families", "List the registered families");

  auto* profile_cmd =
      app.add_subcommand("profile", "Exact f(n,r) profile on a dense r grid");
  profile_cmd->add_option("family", family_id)->required();
  profile_cmd->add_option("n", n)->required();
  profile_cmd->add_option("r_max", r_max, "Largest r to emit (default: full support)");

  auto* kernel_cmd = app.add_subcommand(
      "kernel", "Cutoff functions and the kernel K_mu on an alpha grid");
  kernel_cmd->add_option("mu", mu)->required();
  kernel_cmd->add_option("alpha_min", alpha_min)->required();
  kernel_cmd->add_option("alpha_max", alpha_max)->required();
  kernel_cmd->add_option("step", step)->required();

  auto* poisson_cmd = app.add_subcommand(
      "poisson", "Poisson-family parameter estimates and pmf table");
  poisson_cmd->add_option("family", family_id)->required();
  poisson_cmd->add_option("n", n)->required();
  poisson_cmd->add_option("k_max", k_max, "Largest k in the pmf table");

  auto* compare_cmd = app.add_subcommand(
      "compare", "Scaled exact profile against the predicted step plus kernel");
  compare_cmd->add_option("family", family_id)->required();
  compare_cmd->add_option("n", n)->required();
  compare_cmd
      ->add_option("mu", mu_text, "Kernel parameter, or 'auto' for the measured mu_hat")
      ->required();
  compare_cmd->add_option("alpha_min", alpha_min)->required();
  compare_cmd->add_option("alpha_max", alpha_max)->required();

  auto* oracle_cmd = app.add_subcommand(
      "oracle", "Exact profile against brute-force enumeration (exit 1 on mismatch)");
  oracle_cmd->add_option("family", family_id)->required();
  oracle_cmd->add_option("n", n)->required();

  auto* sample_cmd =
      app.add_subcommand("sample", "Seeded Monte-Carlo histogram of X_n");
  sample_cmd->add_option("family", family_id)->required();
  sample_cmd->add_option("n", n)->required();
  sample_cmd->add_option("trials", trials)->required();
  sample_cmd->add_option("seed", seed)->required();
  sample_cmd->add_flag("--conditioned", conditioned,
                       "Reject draws with no fixed point");

  // Let --format/--out/--precision appear after the verb as well.
  for (auto* sub : app.get_subcommands(/*filter=*/[](const CLI::App*) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalidArguments;
  }

  spec.format = (format == "json") ? OutputFormat::Json : OutputFormat::Csv;

  try {
    if (families_cmd->parsed()) return cmd_families(spec);
    if (profile_cmd->parsed()) return cmd_profile(family_id, n, r_max, spec);
    if (kernel_cmd->parsed()) return cmd_kernel(mu, alpha_min, alpha_max, step, spec);
    if (poisson_cmd->parsed()) return cmd_poisson(family_id, n, k_max, spec);
    if (compare_cmd->parsed())
      return cmd_compare(family_id, n, mu_text, alpha_min, alpha_max, spec);
    if (oracle_cmd->parsed()) return cmd_oracle(family_id, n, spec);
    if (sample_cmd->parsed())
      return cmd_sample(family_id, n, trials, seed, conditioned, spec);
  } catch (const fixsum::UnknownFamilyError& e) {
    std::cerr << e.what() << '\n';
    return kExitUnknownName;
  } catch (const fixsum::UnsupportedFamilyError& e) {
    std::cerr << e.what() << '\n';
    return kExitUnknownName;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kExitInvalidArguments;
  }
  return kExitInvalidArguments;
}
