#pragma once

#include "fixsum/asymptotics.hpp"
#include "fixsum/bigint.hpp"
#include "fixsum/combinatorics.hpp"
#include "fixsum/diagnostics.hpp"
#include "fixsum/errors.hpp"
#include "fixsum/families.hpp"
#include "fixsum/output.hpp"
#include "fixsum/profile.hpp"
#include "fixsum/sampler.hpp"
#include "fixsum/subset_sum.hpp"
