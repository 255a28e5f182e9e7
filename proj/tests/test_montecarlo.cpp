#include <doctest.h>

#include <cmath>
#include <vector>

#include "escprob/errors.hpp"
#include "escprob/montecarlo.hpp"
#include "escprob/quadrature.hpp"
#include "escprob/table3.hpp"
#include "oracles.hpp"

using namespace escprob;

namespace {

struct ConstantStep : StepDistribution {
  Vec step;
  explicit ConstantStep(Vec s) : step(s) {}
  std::string_view name() const override { return "constant"; }
  int dimension() const override { return step.dim(); }
  bool has_sampler() const override { return true; }
  Vec sample(RandomStream&) const override { return step; }
};

McConfig config(std::uint64_t particles, std::uint64_t seed) {
  McConfig c;
  c.particles = particles;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("trivial samplers give exact answers") {
  const MeshElement sq(ElementKind::Parallelogram2D, {{0, 0}, {1, 0}, {0, 1}});
  CHECK(escape_probability_mc(sq, ConstantStep(Vec{0, 0}), config(10000, 1)).value == 0.0);
  CHECK(escape_probability_mc(sq, ConstantStep(Vec{2, 0}), config(10000, 1)).value == 1.0);
  CHECK(transition_probability_mc(sq, sq, ConstantStep(Vec{0, 0}), config(10000, 1)).value == 1.0);
  const auto far = transition_probability_mc(
      MeshElement(ElementKind::Parallelepiped3D, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}),
      MeshElement(ElementKind::Parallelepiped3D, {{50, 0, 0}, {51, 0, 0}, {50, 1, 0}, {50, 0, 1}}),
      WienerStep(3, 1e-3), config(1'000'000, 2));
  CHECK(far.value == 0.0);
  REQUIRE(far.one_sided_bound.has_value());
  CHECK(*far.one_sided_bound == doctest::Approx(1.0 - std::pow(0.05, 1e-6)));
}

TEST_CASE("samplers are required") {
  struct DensityOnly : StepDistribution {
    std::string_view name() const override { return "density-only"; }
    int dimension() const override { return 1; }
  };
  const MeshElement seg(ElementKind::Segment1D, {{0}, {1}});
  CHECK_THROWS_AS(escape_probability_mc(seg, DensityOnly{}, config(10, 0)), SamplerUnavailable);
  McConfig bad;
  bad.particles = 0;
  CHECK_THROWS_AS(bad.validate(), InvalidConfig);
}

TEST_CASE("statistical error formulas") {
  CHECK(theoretical_stat_error(0.3905, 1'000'000) == doctest::Approx(4.879e-4).epsilon(1e-3));
  CHECK(theoretical_stat_error(0.0, 17) == 0.0);
  CHECK(theoretical_stat_error(0.5, 4) == 0.25);
  const std::vector<double> same = {0.2, 0.2, 0.2};
  CHECK(empirical_stat_error(same) == 0.0);
  const std::vector<double> two = {0.0, 1.0};
  CHECK(empirical_stat_error(two) == doctest::Approx(std::sqrt(0.5)));
  const std::vector<double> one = {0.4};
  CHECK_THROWS_AS(empirical_stat_error(one), TooFewRuns);
  CHECK(clopper_pearson_one_sided(0, 100).value() == doctest::Approx(1.0 - std::pow(0.05, 0.01)));
  CHECK(clopper_pearson_one_sided(100, 100).value() == doctest::Approx(std::pow(0.05, 0.01)));
  CHECK_FALSE(clopper_pearson_one_sided(3, 100).has_value());
}

TEST_CASE("parallel kernel reproduces the serial reference bit for bit") {
  const auto g = table3::geometries();
  for (const auto& geo : g) {
    const WienerStep w(geo.element.dim(), 0.1);
    McConfig c = config(200'003, 77);
    c.chunk = 4096;
    const auto ref = reference::escape_probability_mc(geo.element, w, c);
    for (int workers : {1, 2, 8}) {
      c.workers = workers;
      const auto par = escape_probability_mc(geo.element, w, c);
      CHECK(par.value == ref.value);
      CHECK(par.hits == ref.hits);
    }
  }
  const MeshElement a(ElementKind::Segment1D, {{0}, {1}}), b(ElementKind::Segment1D, {{1}, {2}});
  McConfig c = config(100'000, 5);
  c.chunk = 1000;
  const auto ref = reference::transition_probability_mc(a, b, WienerStep(1, 1.0), c);
  c.workers = 3;
  CHECK(transition_probability_mc(a, b, WienerStep(1, 1.0), c).value == ref.value);
}

TEST_CASE("estimates are quantized") {
  const MeshElement seg(ElementKind::Segment1D, {{0}, {2}});
  const std::uint64_t N = 12345;
  const auto e = escape_probability_mc(seg, WienerStep(1, 1.0), config(N, 3));
  const double scaled = e.value * static_cast<double>(N);
  CHECK(std::abs(scaled - std::round(scaled)) <= 1e-9);
  CHECK(e.hits.value() == static_cast<std::uint64_t>(std::round(scaled)));
  CHECK(e.cost == N);
}

TEST_CASE("estimator is unbiased") {
  const MeshElement seg(ElementKind::Segment1D, {{0}, {2}});
  const double p = oracle::segment_escape(2.0, 1.0);
  double sum = 0.0;
  for (int s = 0; s < 200; ++s) sum += escape_probability_mc(seg, WienerStep(1, 1.0), config(10'000, run_seed(9, s))).value;
  CHECK(std::abs(sum / 200 - p) <= 4 * std::sqrt(p * (1 - p) / (200.0 * 10'000)));
}

TEST_CASE("repeated runs") {
  const MeshElement seg(ElementKind::Segment1D, {{0}, {2}});
  McConfig c = config(1'000'000, 1);
  c.runs = 10;
  const auto rep = repeated_escape_mc(seg, WienerStep(1, 1.0), c);
  REQUIRE(rep.values.size() == 10);
  const double theory = theoretical_stat_error(0.3905, 1'000'000);
  CHECK(rep.empirical_error > theory / 3);
  CHECK(rep.empirical_error < theory * 3);
  CHECK(run_seed(1, 0) != run_seed(1, 1));
}

TEST_CASE("Monte Carlo agrees with the deterministic solver") {
  const auto g = table3::geometries();
  const MeshElement& box = g[4].element;
  const auto mc = escape_probability_mc(box, WienerStep(3, 1.0), config(1'000'000, 4));
  CHECK(std::abs(mc.value - 0.7864) <= 4 * 4.1e-4);
  const MeshElement a(ElementKind::Segment1D, {{0}, {1}}), b(ElementKind::Segment1D, {{1}, {2}});
  const auto det = transition_probability_det_1d({0, 1}, {1, 2}, WienerStep(1, 1.0));
  const auto t = transition_probability_mc(a, b, WienerStep(1, 1.0), config(1'000'000, 6));
  CHECK(std::abs(t.value - det.value) <= 4 * theoretical_stat_error(det.value, 1'000'000));
}
