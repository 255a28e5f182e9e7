#include <chrono>
#include <optional>

#include "escprob/errors.hpp"
#include "escprob/montecarlo.hpp"
#include "escprob/random.hpp"
#include "../montecarlo_detail.hpp"

namespace escprob {

namespace reference {

namespace {

template <class Landed>
std::uint64_t count_serial(const MeshElement& source, const StepDistribution& dist,
                           const McConfig& config, Landed landed) {
  if (!dist.has_sampler()) throw SamplerUnavailable("Monte Carlo estimator needs a step sampler");
  if (dist.dimension() != source.dim())
    throw DimensionMismatch("step law dimension does not match element");
  std::optional<RandomStream> rng;
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < config.particles; ++i) {
    if (i % config.chunk == 0) rng.emplace(config.seed, i / config.chunk);
    const Vec x = sample_uniform(source, *rng);
    const Vec next = x + dist.sample(*rng);
    if (landed(next)) ++hits;
  }
  return hits;
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

ProbabilityEstimate escape_probability_mc(const MeshElement& element,
                                          const StepDistribution& dist, const McConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  config.validate();
  const auto hits =
      count_serial(element, dist, config, [&](const Vec& x) { return !contains(element, x); });
  return detail::make_mc_estimate(hits, config.particles, since(t0));
}

ProbabilityEstimate transition_probability_mc(const MeshElement& source,
                                              const MeshElement& target,
                                              const StepDistribution& dist,
                                              const McConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  config.validate();
  if (source.dim() != target.dim()) throw DimensionMismatch("source and target dimensions differ");
  const auto hits =
      count_serial(source, dist, config, [&](const Vec& x) { return contains(target, x); });
  return detail::make_mc_estimate(hits, config.particles, since(t0));
}

}  // namespace reference
}  // namespace escprob
