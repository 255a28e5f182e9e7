#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

#include "escprob/box.hpp"

namespace escprob {

struct QuadratureConfig {
  double abs_tol = 1e-6;
  double rel_tol = 1e-6;
  std::size_t max_subdivisions = 1'000'000;

  /// Throws InvalidConfig unless abs_tol > 0, rel_tol >= 0, max_subdivisions >= 1.
  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::uint64_t evaluations = 0;
  std::size_t boxes = 0;
};

enum class Execution { serial, parallel };

using Integrand = std::function<double(const Vec&)>;

/// Globally adaptive tensor Gauss-Kronrod cubature (15-point Kronrod, embedded
/// 7-point Gauss, per axis). The box with the largest |K - G| is bisected along
/// its longest axis until the summed disagreement is at most
/// max(abs_tol, rel_tol * |value|). Boxes are refined in fixed batches, so the
/// result is bit-identical for serial and parallel execution; with
/// Execution::parallel the integrand is called concurrently and must be
/// thread-safe.
///
/// Throws ToleranceNotMet (carrying the best value) when max_subdivisions boxes
/// are reached, NonFiniteIntegrand on NaN/Inf.
QuadratureResult integrate_adaptive(const Integrand& f, std::span<const Box> boxes,
                                    const QuadratureConfig& config,
                                    Execution exec = Execution::parallel);

QuadratureResult integrate_adaptive(const Integrand& f, const Box& box,
                                    const QuadratureConfig& config,
                                    Execution exec = Execution::parallel);

/// 1D convenience wrapper over consecutive breakpoints.
QuadratureResult integrate_1d(const std::function<double(double)>& f,
                              std::span<const double> breakpoints, const QuadratureConfig& config);

}  // namespace escprob
