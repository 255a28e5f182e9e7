#pragma once

#include <optional>
#include <string_view>

#include "escprob/random.hpp"
#include "escprob/vec.hpp"

namespace escprob {

/// Law p(Δx) of one displacement of the Markov process.
///
/// A law may offer a density (needed by the deterministic solver), a sampler
/// (needed by the Monte Carlo estimator) or both. Implementations are
/// immutable; `sample` mutates only the caller's stream, so one instance may be
/// shared by concurrent samplers that hold independent streams.
class StepDistribution {
 public:
  virtual ~StepDistribution() = default;

  virtual std::string_view name() const = 0;
  virtual int dimension() const = 0;
  virtual bool has_density() const { return false; }
  virtual bool has_sampler() const { return false; }

  virtual double density(const Vec& step) const;
  virtual Vec sample(RandomStream& rng) const;

  /// Typical step length of an isotropic law, used to grade quadrature near
  /// the origin. Empty when unknown.
  virtual std::optional<double> length_scale() const { return std::nullopt; }
  /// Whether density(Δx) diverges as Δx -> 0.
  virtual bool singular_at_origin() const { return false; }
  /// Upper bound on P(|Δx| <= radius).
  virtual double mass_within(double radius) const;
};

/// Increment of an n-dimensional Wiener process over dt: N(0, dt I).
class WienerStep final : public StepDistribution {
 public:
  WienerStep(int dim, double dt);

  double dt() const { return dt_; }

  std::string_view name() const override { return "wiener"; }
  int dimension() const override { return dim_; }
  bool has_density() const override { return true; }
  bool has_sampler() const override { return true; }
  double density(const Vec& step) const override;
  Vec sample(RandomStream& rng) const override;
  std::optional<double> length_scale() const override;
  double mass_within(double radius) const override;

 private:
  int dim_;
  double dt_;
};

/// Free flight between velocity jumps: Δx = v Δt with Δt ~ Exp(lambda),
/// v ~ N(0, I).
class VelocityJumpStep final : public StepDistribution {
 public:
  VelocityJumpStep(int dim, double lambda);

  double lambda() const { return lambda_; }

  std::string_view name() const override { return "velocity_jump"; }
  int dimension() const override { return dim_; }
  bool has_density() const override { return true; }
  bool has_sampler() const override { return true; }
  /// Mixture integral over the flight time, evaluated by adaptive quadrature
  /// in u = lambda Δt. Throws OriginSingularity for |Δx| < 1e-300.
  double density(const Vec& step) const override;
  Vec sample(RandomStream& rng) const override;
  std::optional<double> length_scale() const override;
  bool singular_at_origin() const override { return true; }
  double mass_within(double radius) const override;

 private:
  int dim_;
  double lambda_;
};

}  // namespace escprob
