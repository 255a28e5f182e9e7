#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "escprob/cubature.hpp"
#include "escprob/estimate.hpp"
#include "escprob/geometry.hpp"
#include "escprob/montecarlo.hpp"

namespace escprob::table3 {

inline constexpr std::array<double, 6> kTimeSteps = {1e-2, 1e-1, 1e0, 1e1, 1e2, 1e3};
/// Allowed |det - published| (four printed decimals).
inline constexpr double kDetTolerance = 5e-4;
/// Monte Carlo agreement in units of the binomial standard deviation.
inline constexpr double kMcSigmas = 4.0;
/// Cells at or above this probability are exempt from the MC check.
inline constexpr double kSaturated = 0.9999;
/// Minimum number of the 30 cells that must satisfy the MC check.
inline constexpr int kMcRequired = 28;

struct Geometry {
  std::string label;
  MeshElement element;
  std::array<double, 6> published_det;
};

/// The five benchmark cells (segment, triangle, parallelogram, tetrahedron,
/// parallelepiped) with the published deterministic escape probabilities for
/// the Wiener law at each time step.
std::vector<Geometry> geometries();

struct Cell {
  std::string geometry;
  double dt = 0.0;
  double published_det = 0.0;
  ProbabilityEstimate det;
  std::optional<ProbabilityEstimate> mc;
  std::optional<double> empirical_error;
  double theoretical_error = 0.0;  // at p = det
  bool det_pass = false;
  bool mc_exempt = false;
  bool mc_pass = false;
};

struct Table {
  std::vector<Cell> cells;
  int det_passes = 0;
  int mc_passes = 0;  // exempt cells count as passes
  bool pass = false;
  std::uint64_t particles = 0;
  std::uint64_t seed = 0;
};

/// Runs det (and MC unless `with_mc` is false) for all 30 cells. With
/// mc.runs >= 2 each MC cell also carries the empirical error over runs.
Table run(const QuadratureConfig& quad, const McConfig& mc, bool with_mc = true);

nlohmann::json to_json(const Table& table);
/// Fixed-width text rendering with PASS/FAIL marks and timing comparison.
std::string render(const Table& table);

}  // namespace escprob::table3
