#include "escprob/conditional.hpp"

#include <algorithm>
#include <cmath>

#include "escprob/errors.hpp"

namespace escprob {

namespace {

double positive(double x) { return x > 0.0 ? x : 0.0; }

double simplex_side(const LocalStep& step) {
  double up = 0.0;
  double down = 0.0;
  for (int i = 0; i < step.dim(); ++i) {
    up += positive(step[i]);
    down += positive(-step[i]);
  }
  return 1.0 - std::max(up, down);
}

}  // namespace

double stay_fraction(ReferenceCell cell, const LocalStep& step) {
  const int n = dimension(cell);
  if (step.dim() != n) throw DimensionMismatch("local step dimension does not match cell");
  if (is_simplex(cell)) {
    const double side = positive(simplex_side(step));
    return n == 2 ? side * side : side * side * side;
  }
  double prod = 1.0;
  for (int i = 0; i < n; ++i) prod *= positive(1.0 - std::abs(step[i]));
  return prod;
}

double conditional_escape(const MeshElement& element, const Vec& global_step) {
  return 1.0 - stay_fraction(element.reference(), to_local(element.map(), global_step));
}

int triangle_case(double x, double y) {
  const double s = x + y;
  if (0.0 <= x * y && std::abs(s) <= 1.0) return 0;
  if (y * s < 0.0 && std::abs(x) <= 1.0) return 1;
  if (x * s < 0.0 && std::abs(y) <= 1.0) return 2;
  return 3;
}

double triangle_case_value(int which, double x, double y) {
  auto sq = [](double v) { return v * v; };
  switch (which) {
    case 0:
      return sq(1.0 - std::abs(x) - std::abs(y));
    case 1:
      return sq(1.0 - std::abs(x));
    case 2:
      return sq(1.0 - std::abs(y));
    default:
      return 0.0;
  }
}

int tetrahedron_case(double x, double y, double z) {
  const double s = x + y + z;
  if (0.0 <= x * y && 0.0 <= x * z && std::abs(s) <= 1.0) return 0;
  if (x * y < 0.0 && x * z < 0.0 && x * s < 0.0 && std::abs(y + z) <= 1.0) return 1;
  if (x * y < 0.0 && y * z < 0.0 && y * s < 0.0 && std::abs(x + z) <= 1.0) return 2;
  if (x * z < 0.0 && y * z < 0.0 && z * s < 0.0 && std::abs(x + y) <= 1.0) return 3;
  if (y * s < 0.0 && z * s < 0.0 && std::abs(x) <= 1.0) return 4;
  if (x * s < 0.0 && z * s < 0.0 && std::abs(y) <= 1.0) return 5;
  if (x * s < 0.0 && y * s < 0.0 && std::abs(z) <= 1.0) return 6;
  return 7;
}

double tetrahedron_case_value(int which, double x, double y, double z) {
  auto cube = [](double v) { return v * v * v; };
  const double ax = std::abs(x), ay = std::abs(y), az = std::abs(z);
  switch (which) {
    case 0:
      return cube(1.0 - ax - ay - az);
    case 1:
      return cube(1.0 - ay - az);
    case 2:
      return cube(1.0 - ax - az);
    case 3:
      return cube(1.0 - ax - ay);
    case 4:
      return cube(1.0 - ax);
    case 5:
      return cube(1.0 - ay);
    case 6:
      return cube(1.0 - az);
    default:
      return 0.0;
  }
}

double conditional_transition_1d(const Interval& source, const Interval& target, double step) {
  if (!(source.upper > source.lower) || !(target.upper > target.lower))
    throw EmptyInterval("interval must have positive length");
  if (step < target.lower - source.upper || step > target.upper - source.lower) return 0.0;
  const double overlap = std::min(source.upper, target.upper - step) -
                         std::max(source.lower, target.lower - step);
  return positive(overlap) / source.length();
}

StayRegion support_subdomains(ReferenceCell cell) {
  const int n = dimension(cell);
  StayRegion region{cell, {}};
  for (int mask = 0; mask < (1 << n); ++mask) {
    Box b{Vec(n), Vec(n)};
    for (int i = 0; i < n; ++i) {
      const bool negative = (mask >> i) & 1;
      b.lower[i] = negative ? -1.0 : 0.0;
      b.upper[i] = negative ? 0.0 : 1.0;
    }
    region.boxes.push_back(b);
  }
  return region;
}

}  // namespace escprob
