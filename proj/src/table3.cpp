#include "escprob/table3.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "escprob/distributions.hpp"
#include "escprob/io.hpp"
#include "escprob/quadrature.hpp"

namespace escprob::table3 {

std::vector<Geometry> geometries() {
  return {
      {"segment", MeshElement(ElementKind::Segment1D, {Vec{0}, Vec{2}}),
       {0.0399, 0.1262, 0.3905, 0.7558, 0.9205, 0.9748}},
      {"triangle", MeshElement(ElementKind::Triangle2D, {Vec{0, 0}, Vec{2, 0}, Vec{3, 2}}),
       {0.1478, 0.4082, 0.7957, 0.9700, 0.9968, 0.9997}},
      {"parallelogram",
       MeshElement(ElementKind::Parallelogram2D, {Vec{0, 0}, Vec{2, 0}, Vec{1, 2}, Vec{3, 2}}),
       {0.0825, 0.2476, 0.6394, 0.9408, 0.9937, 0.9994}},
      {"tetrahedron",
       MeshElement(ElementKind::Tetrahedron3D,
                   {Vec{0, 0, 0}, Vec{2, 0, 0}, Vec{3, 2, 0}, Vec{1, 1, 1}}),
       {0.3534, 0.7433, 0.9701, 0.9987, 1.0000, 1.0000}},
      {"parallelepiped",
       MeshElement(ElementKind::Parallelepiped3D,
                   {Vec{0, 0, 0}, Vec{2, 0, 0}, Vec{1, 2, 1}, Vec{0, 0, 2}, Vec{3, 2, 1},
                    Vec{2, 0, 2}, Vec{3, 2, 3}, Vec{1, 2, 3}}),
       {0.1232, 0.3519, 0.7864, 0.9856, 0.9995, 1.0000}},
  };
}

Table run(const QuadratureConfig& quad, const McConfig& mc, bool with_mc) {
  Table table;
  table.particles = mc.particles;
  table.seed = mc.seed;
  for (const Geometry& g : geometries()) {
    for (std::size_t i = 0; i < kTimeSteps.size(); ++i) {
      const WienerStep law(g.element.dim(), kTimeSteps[i]);
      Cell cell;
      cell.geometry = g.label;
      cell.dt = kTimeSteps[i];
      cell.published_det = g.published_det[i];
      cell.det = escape_probability_det(g.element, law, quad);
      cell.det_pass = std::abs(cell.det.value - cell.published_det) <= kDetTolerance;
      cell.theoretical_error = theoretical_stat_error(cell.det.value, mc.particles);
      cell.mc_exempt = cell.det.value >= kSaturated;
      if (with_mc) {
        cell.mc = escape_probability_mc(g.element, law, mc);
        if (mc.runs >= 2) cell.empirical_error = repeated_escape_mc(g.element, law, mc).empirical_error;
        cell.mc_pass = cell.mc_exempt || std::abs(cell.mc->value - cell.det.value) <=
                                             kMcSigmas * cell.theoretical_error;
      }
      table.det_passes += cell.det_pass ? 1 : 0;
      table.mc_passes += cell.mc_pass ? 1 : 0;
      table.cells.push_back(std::move(cell));
    }
  }
  const int total = static_cast<int>(table.cells.size());
  table.pass = table.det_passes == total && (!with_mc || table.mc_passes >= kMcRequired);
  return table;
}

nlohmann::json to_json(const Table& table) {
  nlohmann::json cells = nlohmann::json::array();
  for (const Cell& c : table.cells) {
    nlohmann::json j = {{"geometry", c.geometry},
                        {"dt", c.dt},
                        {"published_det", c.published_det},
                        {"det", estimate_to_json(c.det)},
                        {"theoretical_error", c.theoretical_error},
                        {"det_pass", c.det_pass},
                        {"mc_exempt", c.mc_exempt},
                        {"mc_pass", c.mc_pass}};
    j["mc"] = c.mc ? estimate_to_json(*c.mc) : nlohmann::json(nullptr);
    j["empirical_error"] = c.empirical_error ? nlohmann::json(*c.empirical_error) : nlohmann::json(nullptr);
    cells.push_back(j);
  }
  return {{"cells", cells},
          {"summary",
           {{"det_passes", table.det_passes},
            {"mc_passes", table.mc_passes},
            {"cells", table.cells.size()},
            {"mc_required", kMcRequired},
            {"det_tolerance", kDetTolerance},
            {"pass", table.pass}}},
          {"config", {{"particles", table.particles}, {"seed", table.seed}}}};
}

std::string render(const Table& table) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-15s %8s %9s %9s %9s %9s %9s %9s  %-4s %-4s\n", "geometry",
                "dt", "published", "det", "det_err", "mc", "4sigma", "t_det/mc", "det", "mc");
  os << line;
  double det_time = 0.0, mc_time = 0.0;
  for (const Cell& c : table.cells) {
    const double mc_value = c.mc ? c.mc->value : std::nan("");
    const double ratio = c.mc && c.mc->wall_time > 0.0 ? c.det.wall_time / c.mc->wall_time : std::nan("");
    std::snprintf(line, sizeof line, "%-15s %8.0e %9.4f %9.4f %9.1e %9.4f %9.1e %9.3f  %-4s %-4s\n",
                  c.geometry.c_str(), c.dt, c.published_det, c.det.value, c.det.error_estimate,
                  mc_value, kMcSigmas * c.theoretical_error, ratio, c.det_pass ? "PASS" : "FAIL",
                  !c.mc ? "-" : (c.mc_exempt ? "EXMP" : (c.mc_pass ? "PASS" : "FAIL")));
    os << line;
    det_time += c.det.wall_time;
    if (c.mc) mc_time += c.mc->wall_time;
  }
  std::snprintf(line, sizeof line,
                "det matches: %d/%zu   mc consistent: %d/%zu (need %d)   total time det %.2fs mc %.2fs   %s\n",
                table.det_passes, table.cells.size(), table.mc_passes, table.cells.size(), kMcRequired,
                det_time, mc_time, table.pass ? "PASS" : "FAIL");
  os << line;
  return os.str();
}

}  // namespace escprob::table3
