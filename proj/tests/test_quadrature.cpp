#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "escprob/conditional.hpp"
#include "escprob/cubature.hpp"
#include "escprob/errors.hpp"
#include "escprob/quadrature.hpp"
#include "escprob/random.hpp"
#include "escprob/table3.hpp"
#include "oracles.hpp"

using namespace escprob;

namespace {

Box unit_box(int n, double lo, double hi) {
  Box b{Vec(n), Vec(n)};
  for (int k = 0; k < n; ++k) {
    b.lower[k] = lo;
    b.upper[k] = hi;
  }
  return b;
}

QuadratureConfig tight(double tol) {
  QuadratureConfig c;
  c.abs_tol = tol;
  c.rel_tol = 0.0;
  return c;
}

// Wiener N(0, dt) transition oracle from [a,b] into [c,d].
double transition_oracle(double a, double b, double c, double d, double dt) {
  const WienerStep w(1, dt);
  return oracle::trapezoid([&](double x) { return oracle::interval_overlap(a, b, c, d, x) * w.density(Vec{x}); },
                           c - b, d - a, 1'000'000);
}

}  // namespace

TEST_CASE("cubature basics") {
  const QuadratureConfig cfg;
  CHECK(integrate_adaptive([](const Vec&) { return 1.0; }, unit_box(1, 0, 1), cfg).value ==
        doctest::Approx(1.0).epsilon(1e-12));
  const auto sq = support_subdomains(ReferenceCell::UnitSquare);
  CHECK(integrate_adaptive([](const Vec& x) { return stay_fraction(ReferenceCell::UnitSquare, LocalStep(x)); },
                           sq.boxes, cfg)
            .value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(integrate_adaptive([](const Vec& x) { return x[0] * x[1] * x[2]; }, unit_box(3, 0, 1), cfg).value -
                 0.125) <= 1e-9);
}

TEST_CASE("cubature meets its tolerance and reports failures") {
  const auto r = integrate_adaptive([](const Vec& x) { return std::sqrt(std::abs(x[0] * x[1])); }, unit_box(2, -1, 1),
                                    tight(1e-8));
  CHECK(std::abs(r.value - 16.0 / 9.0) <= 1e-8);
  CHECK(r.error <= 1e-8);

  QuadratureConfig small = tight(1e-14);
  small.max_subdivisions = 20;
  CHECK_THROWS_AS(integrate_adaptive([](const Vec& x) { return std::sqrt(std::abs(x[0])); }, unit_box(2, -1, 1), small),
                  ToleranceNotMet);
  try {
    integrate_adaptive([](const Vec& x) { return std::sqrt(std::abs(x[0])); }, unit_box(2, -1, 1), small);
  } catch (const ToleranceNotMet& e) {
    CHECK(e.value() == doctest::Approx(8.0 / 3.0).epsilon(1e-3));
    CHECK(e.error() > 1e-14);
  }
  CHECK_THROWS_AS(integrate_adaptive([](const Vec&) { return NAN; }, unit_box(1, 0, 1), QuadratureConfig{}),
                  NonFiniteIntegrand);
  QuadratureConfig bad;
  bad.abs_tol = 0.0;
  CHECK_THROWS_AS(bad.validate(), InvalidConfig);
}

TEST_CASE("cubature is identical in serial and parallel") {
  const auto f = [](const Vec& x) { return std::exp(-30 * x.squared_norm()) * (1 + x[0]); };
  const auto s = integrate_adaptive(f, unit_box(3, -1, 1), tight(1e-9), Execution::serial);
  const auto p = integrate_adaptive(f, unit_box(3, -1, 1), tight(1e-9), Execution::parallel);
  CHECK(s.value == p.value);
  CHECK(s.error == p.error);
  CHECK(s.evaluations == p.evaluations);
}

TEST_CASE("segment escape matches the closed form") {
  for (double l : {0.5, 1.0, 2.0})
    for (double dt : {0.1, 1.0, 10.0}) {
      CAPTURE(l);
      CAPTURE(dt);
      const MeshElement seg(ElementKind::Segment1D, {{0}, {l}});
      const auto e = escape_probability_det(seg, WienerStep(1, dt), tight(1e-10));
      CHECK(std::abs(e.value - oracle::segment_escape(l, dt)) <= 1e-8);
    }
  CHECK(std::round(oracle::segment_escape(2.0, 1.0) * 1e4) / 1e4 == doctest::Approx(0.3905));
}

TEST_CASE("benchmark cells") {
  const auto g = table3::geometries();
  const MeshElement& seg = g[0].element;
  const MeshElement& tri = g[1].element;
  const MeshElement& tet = g[3].element;
  CHECK(std::abs(escape_probability_det(seg, WienerStep(1, 1.0)).value - 0.3905) <= 5e-4);
  CHECK(std::abs(escape_probability_det(tri, WienerStep(2, 0.1)).value - 0.4082) <= 5e-4);
  CHECK(std::abs(escape_probability_det(tet, WienerStep(3, 0.01)).value - 0.3534) <= 5e-4);
}

TEST_CASE("escape grows with the time step") {
  for (const auto& geo : table3::geometries()) {
    double prev = -1.0;
    for (double dt : table3::kTimeSteps) {
      const auto e = escape_probability_det(geo.element, WienerStep(geo.element.dim(), dt));
      CHECK(e.value >= 0.0);
      CHECK(e.value <= 1.0);
      CHECK(e.error_estimate >= 0.0);
      // below saturation the increase exceeds the solver error
      if (prev < 1.0 - 1e-5) CHECK(e.value > prev);
      prev = e.value;
    }
  }
}

TEST_CASE("translation and Brownian scaling invariance") {
  RandomStream rng(83);
  const ElementKind kinds[] = {ElementKind::Segment1D, ElementKind::Triangle2D, ElementKind::Parallelogram2D,
                               ElementKind::Tetrahedron3D, ElementKind::Parallelepiped3D};
  const QuadratureConfig cfg;
  int done = 0;
  while (done < 25) {
    const ElementKind kind = kinds[done % 5];
    const int n = dimension(kind);
    std::vector<Vec> v;
    for (int i = 0; i <= n; ++i) {
      Vec p(n);
      for (int k = 0; k < n; ++k) p[k] = 4 * rng.uniform() - 2;
      v.push_back(p);
    }
    try {
      const MeshElement e(kind, v);
      if (e.map().abs_det() < 0.2) continue;
      const double dt = 0.05 + rng.uniform();
      const double s = 0.1 + 5 * rng.uniform();
      Vec shift(n);
      for (int k = 0; k < n; ++k) shift[k] = 100 * rng.normal();
      const double base = escape_probability_det(e, WienerStep(n, dt), cfg).value;
      CHECK(std::abs(escape_probability_det(e.translated(shift), WienerStep(n, dt), cfg).value - base) <=
            2 * cfg.abs_tol);
      CHECK(std::abs(escape_probability_det(e.scaled(s), WienerStep(n, dt * s * s), cfg).value - base) <=
            2 * cfg.abs_tol);
      ++done;
    } catch (const DegenerateElement&) {
    }
  }
}

TEST_CASE("1D deterministic transition") {
  for (double dt : {0.1, 1.0, 10.0}) {
    const auto t = transition_probability_det_1d({0, 1}, {1, 2}, WienerStep(1, dt));
    CHECK(std::abs(t.value - transition_oracle(0, 1, 1, 2, dt)) <= 1e-6);
  }
  CHECK(transition_probability_det_1d({0, 1}, {100, 101}, WienerStep(1, 0.01)).value < 1e-12);
  const auto same = transition_probability_det_1d({0, 1}, {0, 1}, WienerStep(1, 1e-12));
  CHECK(std::abs(same.value - (1.0 - oracle::segment_escape(1.0, 1e-12))) <= 1e-6);
  CHECK(same.value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_THROWS_AS(transition_probability_det_1d({0, 1}, {1, 2}, WienerStep(2, 1.0)), DimensionMismatch);
}

TEST_CASE("laws without a density are refused") {
  struct NoDensity : StepDistribution {
    std::string_view name() const override { return "none"; }
    int dimension() const override { return 1; }
  };
  const MeshElement seg(ElementKind::Segment1D, {{0}, {1}});
  CHECK_THROWS_AS(escape_probability_det(seg, NoDensity{}), DensityUnavailable);
  CHECK_THROWS_AS(escape_probability_det(seg, WienerStep(2, 1.0)), DimensionMismatch);
}

TEST_CASE("velocity-jump escape in two dimensions") {
  const MeshElement sq(ElementKind::Parallelogram2D, {{0, 0}, {1, 0}, {0, 1}});
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-4;
  cfg.rel_tol = 1e-4;
  const auto e = escape_probability_det(sq, VelocityJumpStep(2, 2.0), cfg);
  CHECK(e.value > 0.0);
  CHECK(e.value < 1.0);
  CHECK(e.error_estimate <= 1e-4);
}
