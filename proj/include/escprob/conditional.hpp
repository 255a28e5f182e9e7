#pragma once

#include <vector>

#include "escprob/box.hpp"
#include "escprob/geometry.hpp"

namespace escprob {

/// V(U ∩ (U - Δξ)) / V(U): the fraction of the reference cell that stays
/// inside after translation by the local step.
///
/// Interval, square and cube use the product of (1 - |Δξ_i|)^+. For the
/// triangle and tetrahedron the overlap of two translates of a corner simplex
/// is again a corner simplex with side
///     L = 1 - max(0, ΣΔξ_i) - Σ max(0, -Δξ_i) = 1 - max(Σ Δξ_i^+, Σ Δξ_i^-),
/// so the stay fraction is (L^+)^n. On every open cell of the piecewise case
/// tables (triangle_case / tetrahedron_case) this equals the listed piece, and
/// unlike first-match evaluation of the tables it stays continuous on the
/// coordinate planes.
double stay_fraction(ReferenceCell cell, const LocalStep& step);

/// 1 - stay_fraction of the element's reference cell at A^{-1} Δx.
double conditional_escape(const MeshElement& element, const Vec& global_step);

/// Case index (0-based, in listed order) of the piecewise triangle overlap
/// table; 3 is the zero "otherwise" branch. First matching predicate wins.
int triangle_case(double dxi, double deta);
/// Value of the given triangle case piece, V(T2 ∩ (T2-Δξ)) / V(T2).
double triangle_case_value(int which, double dxi, double deta);

/// Case index (0-based, listed order) of the tetrahedron table; 7 is the zero
/// branch. In cases 1-3 one coordinate has the sign opposite to the other
/// two and to the sum; the piece drops that coordinate, e.g. case 2 (odd η)
/// is (1 - |Δξ| - |Δζ|)^3.
int tetrahedron_case(double dxi, double deta, double dzeta);
double tetrahedron_case_value(int which, double dxi, double deta, double dzeta);

struct Interval {
  double lower;
  double upper;
  double length() const { return upper - lower; }
};

/// Fraction of `source` that lands in `target` after a shift by `step`.
/// Throws EmptyInterval if either interval has non-positive length.
double conditional_transition_1d(const Interval& source, const Interval& target, double step);

/// Boxes with disjoint interiors covering the support of the stay fraction.
struct StayRegion {
  ReferenceCell cell;
  std::vector<Box> boxes;
};

/// Sign-orthants of [-1, 1]^n (2, 4 or 8 unit boxes).
StayRegion support_subdomains(ReferenceCell cell);

}  // namespace escprob
