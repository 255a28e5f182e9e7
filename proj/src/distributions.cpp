#include "escprob/distributions.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "escprob/cubature.hpp"
#include "escprob/errors.hpp"

namespace escprob {

namespace {

constexpr double kOriginRadius = 1e-300;
constexpr double kDensityTolerance = 1e-10;

void check_dim(int dim) {
  if (dim < 1 || dim > 3) throw InvalidConfig("step law dimension must be 1, 2 or 3");
}

void check_step(const Vec& step, int dim) {
  if (step.dim() != dim) throw DimensionMismatch("step dimension does not match the law");
}

// Location of the maximum of u^-n exp(-u - rho^2 / (2 u^2)): u^3 + n u^2 = rho^2.
double mixture_peak(int n, double rho) {
  double lo = 0.0, hi = std::max(rho / std::sqrt(static_cast<double>(n)), std::cbrt(rho * rho)) + 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid * mid * (mid + n) < rho * rho)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double StepDistribution::density(const Vec&) const {
  throw DensityUnavailable(std::string(name()) + ": law provides no density");
}

Vec StepDistribution::sample(RandomStream&) const {
  throw SamplerUnavailable(std::string(name()) + ": law provides no sampler");
}

double StepDistribution::mass_within(double) const { return 1.0; }

WienerStep::WienerStep(int dim, double dt) : dim_(dim), dt_(dt) {
  check_dim(dim);
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidConfig("wiener: dt must be > 0");
}

double WienerStep::density(const Vec& step) const {
  check_step(step, dim_);
  return std::pow(2.0 * std::numbers::pi * dt_, -0.5 * dim_) *
         std::exp(-step.squared_norm() / (2.0 * dt_));
}

Vec WienerStep::sample(RandomStream& rng) const {
  Vec out(dim_);
  const double sigma = std::sqrt(dt_);
  for (int i = 0; i < dim_; ++i) out[i] = sigma * rng.normal();
  return out;
}

std::optional<double> WienerStep::length_scale() const { return std::sqrt(dt_); }

double WienerStep::mass_within(double radius) const {
  const double x = radius / std::sqrt(dt_);
  switch (dim_) {
    case 1:
      return std::erf(x / std::numbers::sqrt2);
    case 2:
      return -std::expm1(-0.5 * x * x);
    default:
      return std::erf(x / std::numbers::sqrt2) -
             std::sqrt(2.0 / std::numbers::pi) * x * std::exp(-0.5 * x * x);
  }
}

VelocityJumpStep::VelocityJumpStep(int dim, double lambda) : dim_(dim), lambda_(lambda) {
  check_dim(dim);
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw InvalidConfig("velocity_jump: lambda must be > 0");
}

double VelocityJumpStep::density(const Vec& step) const {
  check_step(step, dim_);
  const double r = step.norm();
  if (r < kOriginRadius)
    throw OriginSingularity("velocity_jump: density is not finite at the origin");

  const int n = dim_;
  const double rho = lambda_ * r;
  const double prefactor = std::pow(lambda_, n) * std::pow(2.0 * std::numbers::pi, -0.5 * n);
  const double half_rho2 = 0.5 * rho * rho;
  auto integrand = [n, half_rho2](double u) {
    if (u <= 0.0) return 0.0;
    const double exponent = -u - half_rho2 / (u * u);
    if (exponent < -745.0) return 0.0;
    return std::exp(exponent) / std::pow(u, n);
  };

  const double peak = mixture_peak(n, rho);
  std::vector<double> breaks = {0.0, 0.5 * peak, peak};
  double x = peak;
  while (x < peak + 1.0) {
    x *= 2.0;
    breaks.push_back(x);
  }
  for (double extra : {4.0, 12.0, 30.0, 60.0}) breaks.push_back(x + extra);

  QuadratureConfig cfg;
  cfg.abs_tol = kDensityTolerance / prefactor;
  cfg.rel_tol = kDensityTolerance;
  cfg.max_subdivisions = 20'000;
  return prefactor * integrate_1d(integrand, breaks, cfg).value;
}

Vec VelocityJumpStep::sample(RandomStream& rng) const {
  const double flight = rng.exponential(lambda_);
  Vec out(dim_);
  for (int i = 0; i < dim_; ++i) out[i] = rng.normal() * flight;
  return out;
}

std::optional<double> VelocityJumpStep::length_scale() const { return 1.0 / lambda_; }

double VelocityJumpStep::mass_within(double radius) const {
  // P(|v| t <= r) = E_v[1 - exp(-lambda r / |v|)].
  const double a = lambda_ * radius;
  if (dim_ == 1) {
    auto f = [a](double v) {
      return -std::expm1(-a / v) * std::exp(-0.5 * v * v) * std::sqrt(2.0 / std::numbers::pi);
    };
    const std::vector<double> breaks = {0.0, std::min(a, 1.0), 1.0, 4.0, 10.0, 40.0};
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-14;
    cfg.rel_tol = 1e-8;
    const auto r = integrate_1d(f, breaks, cfg);
    return std::min(1.0, r.value + r.error);
  }
  // 1 - e^{-x} <= x and E|v|^{-1} = Gamma((n-1)/2) / (sqrt2 Gamma(n/2)).
  const double inv_mean = std::tgamma(0.5 * (dim_ - 1)) / (std::numbers::sqrt2 * std::tgamma(0.5 * dim_));
  return std::min(1.0, a * inv_mean);
}

}  // namespace escprob
