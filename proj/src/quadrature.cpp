#include "escprob/quadrature.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "escprob/errors.hpp"

namespace escprob {

namespace {

constexpr double kGradingThreshold = 0.05;
constexpr double kGradingRatio = 4.0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// Breakpoints in (0, 1): spread, 4 spread, 16 spread, ...
std::vector<double> grading_points(double spread) {
  std::vector<double> pts;
  if (!(spread > 0.0) || spread >= kGradingThreshold) return pts;
  for (double x = spread; x < 1.0; x *= kGradingRatio) pts.push_back(x);
  return pts;
}

}  // namespace

std::string_view to_string(Method method) {
  return method == Method::deterministic ? "deterministic" : "monte_carlo";
}

std::vector<Box> graded_support(ReferenceCell cell, const AffineMap& map,
                                const StepDistribution& dist) {
  const StayRegion region = support_subdomains(cell);
  const int n = dimension(cell);
  const auto scale = dist.length_scale();
  if (!scale) return region.boxes;

  // Per-axis breakpoints on [0, 1].
  std::vector<std::vector<double>> axis_points(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto& pts = axis_points[static_cast<std::size_t>(i)];
    pts.push_back(0.0);
    for (double p : grading_points(*scale * map.inverse().row(i).norm())) pts.push_back(p);
    pts.push_back(1.0);
  }

  std::vector<Box> boxes;
  for (const Box& orthant : region.boxes) {
    std::vector<Box> current = {orthant};
    for (int i = 0; i < n; ++i) {
      const auto& pts = axis_points[static_cast<std::size_t>(i)];
      const bool negative = orthant.upper[i] <= 0.0;
      std::vector<Box> next;
      for (const Box& b : current) {
        for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
          Box piece = b;
          piece.lower[i] = negative ? -pts[k + 1] : pts[k];
          piece.upper[i] = negative ? -pts[k] : pts[k + 1];
          next.push_back(piece);
        }
      }
      current = std::move(next);
    }
    boxes.insert(boxes.end(), current.begin(), current.end());
  }
  return boxes;
}

ProbabilityEstimate escape_probability_det(const MeshElement& element,
                                           const StepDistribution& dist,
                                           const QuadratureConfig& config, Execution exec) {
  const auto start = Clock::now();
  if (!dist.has_density()) throw DensityUnavailable("deterministic solver needs a step density");
  if (dist.dimension() != element.dim())
    throw DimensionMismatch("step law dimension does not match element");
  config.validate();

  const AffineMap& map = element.map();
  const ReferenceCell cell = element.reference();
  const Mat& a = map.matrix();
  const double jacobian = map.abs_det();
  const bool exclude_origin = dist.singular_at_origin() && element.dim() >= 2;

  auto integrand = [&](const Vec& xi) {
    if (exclude_origin && xi.norm() < kOriginExclusionRadius) return 0.0;
    const double stay = stay_fraction(cell, LocalStep(xi));
    if (stay == 0.0) return 0.0;
    return stay * dist.density(a * xi) * jacobian;
  };

  double exclusion_error = 0.0;
  if (exclude_origin)
    exclusion_error = dist.mass_within(a.frobenius_norm() * kOriginExclusionRadius);

  QuadratureConfig budget = config;
  if (exclusion_error < 0.5 * config.abs_tol) budget.abs_tol -= exclusion_error;

  const std::vector<Box> boxes = graded_support(cell, map, dist);
  QuadratureResult stay;
  try {
    stay = integrate_adaptive(integrand, boxes, budget, exec);
  } catch (const ToleranceNotMet& e) {
    throw ToleranceNotMet(e.what(), clamp01(1.0 - e.value()), e.error() + exclusion_error,
                          e.evaluations());
  }

  ProbabilityEstimate out;
  out.method = Method::deterministic;
  out.value = clamp01(1.0 - stay.value);
  out.error_estimate = stay.error + exclusion_error;
  out.cost = stay.evaluations;
  out.wall_time = seconds_since(start);
  return out;
}

ProbabilityEstimate transition_probability_det_1d(const Interval& source, const Interval& target,
                                                  const StepDistribution& dist,
                                                  const QuadratureConfig& config) {
  const auto start = Clock::now();
  if (!dist.has_density()) throw DensityUnavailable("deterministic solver needs a step density");
  if (dist.dimension() != 1)
    throw DimensionMismatch("deterministic transition supported in 1D only");
  if (!(source.upper > source.lower) || !(target.upper > target.lower))
    throw EmptyInterval("interval must have positive length");
  config.validate();

  const double lo = target.lower - source.upper;
  const double hi = target.upper - source.lower;
  std::vector<double> breaks = {lo, hi, target.lower - source.lower, target.upper - source.upper,
                                0.0};
  if (const auto scale = dist.length_scale()) {
    for (double p : grading_points(*scale / source.length())) {
      breaks.push_back(p * source.length());
      breaks.push_back(-p * source.length());
    }
  }
  std::erase_if(breaks, [&](double x) { return x < lo || x > hi; });
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  std::vector<Box> boxes;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    boxes.push_back(Box{Vec{breaks[i]}, Vec{breaks[i + 1]}});

  auto integrand = [&](const Vec& x) {
    const double frac = conditional_transition_1d(source, target, x[0]);
    return frac == 0.0 ? 0.0 : frac * dist.density(x);
  };
  QuadratureResult q;
  try {
    q = integrate_adaptive(integrand, boxes, config, Execution::serial);
  } catch (const ToleranceNotMet& e) {
    throw ToleranceNotMet(e.what(), clamp01(e.value()), e.error(), e.evaluations());
  }

  ProbabilityEstimate out;
  out.method = Method::deterministic;
  out.value = clamp01(q.value);
  out.error_estimate = q.error;
  out.cost = q.evaluations;
  out.wall_time = seconds_since(start);
  return out;
}

}  // namespace escprob
