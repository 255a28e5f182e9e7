#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace escprob {

enum class Method { deterministic, monte_carlo };

std::string_view to_string(Method method);

/// A probability with its error estimate and cost.
struct ProbabilityEstimate {
  double value = 0.0;
  double error_estimate = 0.0;
  Method method = Method::deterministic;
  /// Integrand evaluations (deterministic) or particles (Monte Carlo).
  std::uint64_t cost = 0;
  double wall_time = 0.0;
  /// Monte Carlo only: escaped/transitioned particle count.
  std::optional<std::uint64_t> hits;
  /// Monte Carlo only, when value is 0 or 1: one-sided 95% Clopper-Pearson
  /// bound (upper bound at 0, lower bound at 1).
  std::optional<double> one_sided_bound;

  friend bool operator==(const ProbabilityEstimate&, const ProbabilityEstimate&) = default;
};

}  // namespace escprob
