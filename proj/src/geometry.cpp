#include "escprob/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "escprob/errors.hpp"

namespace escprob {

namespace {

constexpr double kDegeneracyFactor = 1e-14;
constexpr double kImpliedVertexTolerance = 1e-12;

struct KindInfo {
  ElementKind kind;
  std::string_view name;
  int dim;
  ReferenceCell cell;
  std::size_t spanning;  // vertices that define the map
  std::size_t full;      // vertices when implied corners are listed too
};

constexpr KindInfo kKinds[] = {
    {ElementKind::Segment1D, "segment", 1, ReferenceCell::UnitInterval, 2, 2},
    {ElementKind::Triangle2D, "triangle", 2, ReferenceCell::UnitTriangle, 3, 3},
    {ElementKind::Parallelogram2D, "parallelogram", 2, ReferenceCell::UnitSquare, 3, 4},
    {ElementKind::Tetrahedron3D, "tetrahedron", 3, ReferenceCell::UnitTetrahedron, 4, 4},
    {ElementKind::Parallelepiped3D, "parallelepiped", 3, ReferenceCell::UnitCube, 4, 8},
};

const KindInfo& info(ElementKind kind) {
  for (const auto& k : kKinds)
    if (k.kind == kind) return k;
  throw InvalidElement("unknown element kind");
}

std::vector<Vec> implied_corners(ElementKind kind, const std::vector<Vec>& v) {
  std::vector<Vec> out(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(info(kind).spanning));
  if (kind == ElementKind::Parallelogram2D) {
    out.push_back(v[1] + v[2] - v[0]);
  } else if (kind == ElementKind::Parallelepiped3D) {
    out.push_back(v[1] + v[2] - v[0]);
    out.push_back(v[1] + v[3] - v[0]);
    out.push_back(v[1] + v[2] + v[3] - v[0] - v[0]);
    out.push_back(v[2] + v[3] - v[0]);
  }
  return out;
}

AffineMap spanning_map(ElementKind kind, const std::vector<Vec>& v) {
  const KindInfo& k = info(kind);
  if (v.size() != k.spanning && v.size() != k.full)
    throw InvalidElement(std::string(k.name) + ": expected " + std::to_string(k.spanning) +
                         (k.full != k.spanning ? " or " + std::to_string(k.full) : std::string()) +
                         " vertices, got " + std::to_string(v.size()));
  for (const Vec& p : v) {
    if (p.dim() != k.dim)
      throw InvalidElement(std::string(k.name) + ": vertices must have " +
                           std::to_string(k.dim) + " coordinates");
    if (!p.finite()) throw InvalidElement(std::string(k.name) + ": non-finite vertex coordinate");
  }

  Mat a(k.dim);
  double scale = 0.0;
  for (int c = 0; c < k.dim; ++c) {
    const Vec edge = v[static_cast<std::size_t>(c + 1)] - v[0];
    scale = std::max(scale, edge.norm());
    for (int r = 0; r < k.dim; ++r) a(r, c) = edge[r];
  }
  const double threshold = kDegeneracyFactor * std::pow(scale, k.dim);
  if (std::abs(a.determinant()) <= threshold || scale == 0.0)
    throw DegenerateElement(std::string(k.name) + ": spanning edges are linearly dependent");
  return AffineMap(a, v[0], threshold);
}

void validate_implied(ElementKind kind, const std::vector<Vec>& v) {
  const KindInfo& k = info(kind);
  if (v.size() == k.spanning || k.full == k.spanning) return;
  const std::vector<Vec> expect = implied_corners(kind, v);
  double scale = 0.0;
  for (const Vec& p : expect) scale = std::max(scale, p.norm());
  for (std::size_t i = k.spanning; i < k.full; ++i) {
    if ((v[i] - expect[i]).norm() > kImpliedVertexTolerance * std::max(scale, 1.0))
      throw InvalidElement(std::string(k.name) + ": vertex " + std::to_string(i) +
                           " does not match the corner implied by the spanning vertices");
  }
}

}  // namespace

int dimension(ElementKind kind) { return info(kind).dim; }

int dimension(ReferenceCell cell) {
  switch (cell) {
    case ReferenceCell::UnitInterval:
      return 1;
    case ReferenceCell::UnitTriangle:
    case ReferenceCell::UnitSquare:
      return 2;
    case ReferenceCell::UnitTetrahedron:
    case ReferenceCell::UnitCube:
      return 3;
  }
  return 0;
}

ReferenceCell reference_cell(ElementKind kind) { return info(kind).cell; }

double reference_measure(ReferenceCell cell) {
  switch (cell) {
    case ReferenceCell::UnitTriangle:
      return 0.5;
    case ReferenceCell::UnitTetrahedron:
      return 1.0 / 6.0;
    default:
      return 1.0;
  }
}

bool is_simplex(ReferenceCell cell) {
  return cell == ReferenceCell::UnitTriangle || cell == ReferenceCell::UnitTetrahedron;
}

std::string_view to_string(ElementKind kind) { return info(kind).name; }

std::optional<ElementKind> parse_element_kind(std::string_view name) {
  for (const auto& k : kKinds)
    if (k.name == name) return k.kind;
  return std::nullopt;
}

std::string_view to_string(ReferenceCell cell) {
  switch (cell) {
    case ReferenceCell::UnitInterval:
      return "unit_interval";
    case ReferenceCell::UnitTriangle:
      return "unit_triangle";
    case ReferenceCell::UnitSquare:
      return "unit_square";
    case ReferenceCell::UnitTetrahedron:
      return "unit_tetrahedron";
    case ReferenceCell::UnitCube:
      return "unit_cube";
  }
  return "?";
}

LocalStep::LocalStep(Vec components) : v_(components) {
  if (!v_.finite()) throw Error("local step has non-finite components");
}

AffineMap::AffineMap(Mat matrix, Vec offset, double det_threshold)
    : matrix_(matrix), offset_(offset), abs_det_(std::abs(matrix.determinant())) {
  if (matrix.dim() != offset.dim()) throw DimensionMismatch("affine map: matrix/offset dimensions");
  if (!(abs_det_ > det_threshold)) throw DegenerateElement("affine map is singular");
  inverse_ = matrix_.inverse();
}

Vec AffineMap::to_global(const Vec& local_point) const { return matrix_ * local_point + offset_; }

Vec AffineMap::to_local_point(const Vec& global_point) const {
  return inverse_ * (global_point - offset_);
}

MeshElement::MeshElement(ElementKind kind, std::vector<Vec> vertices)
    : kind_(kind), vertices_(std::move(vertices)), map_(spanning_map(kind_, vertices_)) {
  validate_implied(kind_, vertices_);
}

std::vector<Vec> MeshElement::corners() const { return implied_corners(kind_, vertices_); }

MeshElement MeshElement::translated(const Vec& offset) const {
  std::vector<Vec> v = vertices_;
  for (Vec& p : v) p += offset;
  return MeshElement(kind_, std::move(v));
}

MeshElement MeshElement::scaled(double factor) const {
  std::vector<Vec> v = vertices_;
  for (Vec& p : v) p *= factor;
  return MeshElement(kind_, std::move(v));
}

AffineMap build_affine_map(const MeshElement& element) { return element.map(); }

LocalStep to_local(const AffineMap& map, const Vec& global_step) {
  if (global_step.dim() != map.dim()) throw DimensionMismatch("step dimension does not match map");
  return LocalStep(map.inverse() * global_step);
}

bool in_reference_cell(ReferenceCell cell, const Vec& p, double tol) {
  const int n = dimension(cell);
  if (p.dim() != n) throw DimensionMismatch("point dimension does not match cell");
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    if (p[i] < -tol) return false;
    if (!is_simplex(cell) && p[i] > 1.0 + tol) return false;
    sum += p[i];
  }
  return !is_simplex(cell) || sum <= 1.0 + tol;
}

bool contains(const MeshElement& element, const Vec& point) {
  if (point.dim() != element.dim()) throw DimensionMismatch("point dimension does not match element");
  return in_reference_cell(element.reference(), element.map().to_local_point(point));
}

Vec sample_reference(ReferenceCell cell, RandomStream& rng) {
  const int n = dimension(cell);
  Vec p(n);
  for (int i = 0; i < n; ++i) p[i] = rng.uniform();
  if (cell == ReferenceCell::UnitTriangle) {
    if (p[0] + p[1] > 1.0) {
      p[0] = 1.0 - p[0];
      p[1] = 1.0 - p[1];
    }
  } else if (cell == ReferenceCell::UnitTetrahedron) {
    // Cube folded onto the corner simplex (Rocchini & Cignoni).
    double s = p[0], t = p[1], u = p[2];
    if (s + t > 1.0) {
      s = 1.0 - s;
      t = 1.0 - t;
    }
    if (t + u > 1.0) {
      const double tmp = u;
      u = 1.0 - s - t;
      t = 1.0 - tmp;
    } else if (s + t + u > 1.0) {
      const double tmp = u;
      u = s + t + u - 1.0;
      s = 1.0 - t - tmp;
    }
    p = Vec{s, t, u};
  }
  return p;
}

Vec sample_uniform(const MeshElement& element, RandomStream& rng) {
  return element.map().to_global(sample_reference(element.reference(), rng));
}

double measure(const MeshElement& element) {
  return element.map().abs_det() * reference_measure(element.reference());
}

}  // namespace escprob
