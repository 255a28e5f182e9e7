#pragma once

#include <cstdint>

#include "escprob/estimate.hpp"

namespace escprob::detail {

ProbabilityEstimate make_mc_estimate(std::uint64_t hits, std::uint64_t n, double wall_time);

}  // namespace escprob::detail
