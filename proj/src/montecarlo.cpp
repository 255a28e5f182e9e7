#include "escprob/montecarlo.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <numeric>

#include "escprob/errors.hpp"
#include "escprob/random.hpp"
#include "montecarlo_detail.hpp"

namespace escprob {

namespace {

using Clock = std::chrono::steady_clock;

void check_law(const StepDistribution& dist, int dim) {
  if (!dist.has_sampler()) throw SamplerUnavailable("Monte Carlo estimator needs a step sampler");
  if (dist.dimension() != dim) throw DimensionMismatch("step law dimension does not match element");
}

template <class Landed>
std::uint64_t count_chunked(const MeshElement& source, const StepDistribution& dist,
                            const McConfig& config, Landed landed) {
  const std::uint64_t chunks = (config.particles + config.chunk - 1) / config.chunk;
  std::vector<std::uint64_t> counts(chunks, 0);
  std::vector<std::exception_ptr> failures(chunks);
  const auto n_chunks = static_cast<std::int64_t>(chunks);
  const int threads = config.workers > 0 ? config.workers : 0;

#pragma omp parallel for schedule(dynamic) num_threads(threads) if (threads != 1)
  for (std::int64_t k = 0; k < n_chunks; ++k) {
    const auto chunk = static_cast<std::uint64_t>(k);
    try {
      RandomStream rng(config.seed, chunk);
      const std::uint64_t begin = chunk * config.chunk;
      const std::uint64_t end = std::min(config.particles, begin + config.chunk);
      std::uint64_t hits = 0;
      for (std::uint64_t i = begin; i < end; ++i) {
        const Vec x = sample_uniform(source, rng);
        const Vec step = dist.sample(rng);
        if (landed(x + step)) ++hits;
      }
      counts[chunk] = hits;
    } catch (...) {
      failures[chunk] = std::current_exception();
    }
  }
  for (const auto& e : failures)
    if (e) std::rethrow_exception(e);
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

}  // namespace

void McConfig::validate() const {
  if (particles < 1) throw InvalidConfig("particles must be >= 1");
  if (runs < 1) throw InvalidConfig("runs must be >= 1");
  if (chunk < 1) throw InvalidConfig("chunk must be >= 1");
  if (workers < 0) throw InvalidConfig("workers must be >= 0");
}

namespace detail {

ProbabilityEstimate make_mc_estimate(std::uint64_t hits, std::uint64_t n, double wall_time) {
  ProbabilityEstimate out;
  out.method = Method::monte_carlo;
  out.value = static_cast<double>(hits) / static_cast<double>(n);
  out.error_estimate = theoretical_stat_error(out.value, n);
  out.cost = n;
  out.hits = hits;
  out.one_sided_bound = clopper_pearson_one_sided(hits, n);
  out.wall_time = wall_time;
  return out;
}

}  // namespace detail

ProbabilityEstimate escape_probability_mc(const MeshElement& element,
                                          const StepDistribution& dist, const McConfig& config) {
  const auto start = Clock::now();
  config.validate();
  check_law(dist, element.dim());
  const std::uint64_t hits = count_chunked(element, dist, config, [&](const Vec& x) {
    return !contains(element, x);
  });
  return detail::make_mc_estimate(hits, config.particles,
                                  std::chrono::duration<double>(Clock::now() - start).count());
}

ProbabilityEstimate transition_probability_mc(const MeshElement& source,
                                              const MeshElement& target,
                                              const StepDistribution& dist,
                                              const McConfig& config) {
  const auto start = Clock::now();
  config.validate();
  if (source.dim() != target.dim()) throw DimensionMismatch("source and target dimensions differ");
  check_law(dist, source.dim());
  const std::uint64_t hits = count_chunked(source, dist, config, [&](const Vec& x) {
    return contains(target, x);
  });
  return detail::make_mc_estimate(hits, config.particles,
                                  std::chrono::duration<double>(Clock::now() - start).count());
}

double theoretical_stat_error(double p, std::uint64_t n) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidConfig("probability must lie in [0, 1]");
  if (n < 1) throw InvalidConfig("sample count must be >= 1");
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

double empirical_stat_error(std::span<const double> estimates) {
  if (estimates.size() < 2) throw TooFewRuns("empirical error needs at least 2 runs");
  // Welford: exact zero for identical values
  double mean = 0.0, ss = 0.0;
  std::size_t k = 0;
  for (double v : estimates) {
    ++k;
    const double d = v - mean;
    mean += d / static_cast<double>(k);
    ss += d * (v - mean);
  }
  return std::sqrt(ss / static_cast<double>(estimates.size() - 1));
}

std::optional<double> clopper_pearson_one_sided(std::uint64_t hits, std::uint64_t n,
                                                double confidence) {
  if (n == 0) return std::nullopt;
  const double alpha = 1.0 - confidence;
  const double root = std::pow(alpha, 1.0 / static_cast<double>(n));
  if (hits == 0) return 1.0 - root;
  if (hits == n) return root;
  return std::nullopt;
}

std::uint64_t run_seed(std::uint64_t seed, int run) {
  return mix64(seed + static_cast<std::uint64_t>(run));
}

RepeatedEstimate repeated_escape_mc(const MeshElement& element, const StepDistribution& dist,
                                    const McConfig& config) {
  config.validate();
  RepeatedEstimate out;
  for (int r = 0; r < config.runs; ++r) {
    McConfig run = config;
    run.seed = run_seed(config.seed, r);
    out.values.push_back(escape_probability_mc(element, dist, run).value);
  }
  out.mean = std::accumulate(out.values.begin(), out.values.end(), 0.0) /
             static_cast<double>(out.values.size());
  if (out.values.size() >= 2) out.empirical_error = empirical_stat_error(out.values);
  return out;
}

}  // namespace escprob
