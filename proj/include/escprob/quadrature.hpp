#pragma once

#include <vector>

#include "escprob/conditional.hpp"
#include "escprob/cubature.hpp"
#include "escprob/distributions.hpp"
#include "escprob/estimate.hpp"
#include "escprob/geometry.hpp"

namespace escprob {

/// Radius (local coordinates) of the ball around Δξ = 0 left out of the
/// integral for laws whose density is singular there (n >= 2); its mass bound
/// is added to the error estimate.
inline constexpr double kOriginExclusionRadius = 1e-8;

/// Deterministic escape probability.
///
/// Integrates the stay probability
///     ∫ stay_fraction(U, Δξ) p(A Δξ) |det A| dΔξ
/// over the compact support boxes of U and returns 1 - stay, clamped to [0, 1].
/// Requires a density; throws DensityUnavailable otherwise.
ProbabilityEstimate escape_probability_det(const MeshElement& element,
                                           const StepDistribution& dist,
                                           const QuadratureConfig& config = {},
                                           Execution exec = Execution::parallel);

/// Deterministic 1D transition probability from `source` into `target`,
/// integrating conditional_transition_1d * p over [c - b, d - a].
ProbabilityEstimate transition_probability_det_1d(const Interval& source, const Interval& target,
                                                  const StepDistribution& dist,
                                                  const QuadratureConfig& config = {});

/// Initial integration boxes: the support orthants, split geometrically toward
/// the origin along axes whose local step spread is below 0.05.
std::vector<Box> graded_support(ReferenceCell cell, const AffineMap& map,
                                const StepDistribution& dist);

}  // namespace escprob
