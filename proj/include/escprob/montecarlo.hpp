#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "escprob/distributions.hpp"
#include "escprob/estimate.hpp"
#include "escprob/geometry.hpp"

namespace escprob {

struct McConfig {
  std::uint64_t particles = 1'000'000;
  std::uint64_t seed = 0;
  /// Repetitions used for the empirical error.
  int runs = 10;
  /// Particles per independent random stream.
  std::uint64_t chunk = std::uint64_t{1} << 16;
  /// OpenMP threads; 0 uses the runtime default. Never affects results.
  int workers = 0;

  void validate() const;
};

/// Single-step escape estimate: place each particle uniformly in the element,
/// apply one sampled step, count those no longer contained.
///
/// Chunk k of the particles draws from RandomStream(seed, k); chunk counts are
/// summed in index order, so the estimate depends only on
/// (element, law, particles, seed, chunk), never on the worker count.
ProbabilityEstimate escape_probability_mc(const MeshElement& element,
                                          const StepDistribution& dist, const McConfig& config);

/// As escape_probability_mc, counting particles that land in `target`.
ProbabilityEstimate transition_probability_mc(const MeshElement& source,
                                              const MeshElement& target,
                                              const StepDistribution& dist,
                                              const McConfig& config);

namespace reference {

// Plain sequential loops over particles; kept as the oracle for the chunked
// OpenMP kernels above (results must match bit for bit).
ProbabilityEstimate escape_probability_mc(const MeshElement& element,
                                          const StepDistribution& dist, const McConfig& config);
ProbabilityEstimate transition_probability_mc(const MeshElement& source,
                                              const MeshElement& target,
                                              const StepDistribution& dist,
                                              const McConfig& config);

}  // namespace reference

/// Binomial standard deviation sqrt(p (1 - p) / n).
double theoretical_stat_error(double p, std::uint64_t n);

/// Sample standard deviation (divisor size - 1). Throws TooFewRuns below 2.
double empirical_stat_error(std::span<const double> estimates);

/// One-sided Clopper-Pearson bound for the extreme outcomes: the upper bound
/// when hits == 0, the lower bound when hits == n. Empty otherwise.
std::optional<double> clopper_pearson_one_sided(std::uint64_t hits, std::uint64_t n,
                                                double confidence = 0.95);

/// Seed of repetition `run` in a repeated series.
std::uint64_t run_seed(std::uint64_t seed, int run);

struct RepeatedEstimate {
  std::vector<double> values;
  double mean = 0.0;
  double empirical_error = 0.0;
};

/// config.runs independent escape estimates with seeds run_seed(seed, r).
RepeatedEstimate repeated_escape_mc(const MeshElement& element, const StepDistribution& dist,
                                    const McConfig& config);

}  // namespace escprob
