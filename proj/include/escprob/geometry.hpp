#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "escprob/random.hpp"
#include "escprob/vec.hpp"

namespace escprob {

enum class ElementKind { Segment1D, Triangle2D, Parallelogram2D, Tetrahedron3D, Parallelepiped3D };

/// Canonical cell every element of a kind is affinely equivalent to.
enum class ReferenceCell { UnitInterval, UnitTriangle, UnitSquare, UnitTetrahedron, UnitCube };

int dimension(ElementKind kind);
int dimension(ReferenceCell cell);
ReferenceCell reference_cell(ElementKind kind);
/// 1, 1/2, 1, 1/6, 1.
double reference_measure(ReferenceCell cell);
bool is_simplex(ReferenceCell cell);

/// File-format names: "segment", "triangle", "parallelogram", "tetrahedron", "parallelepiped".
std::string_view to_string(ElementKind kind);
std::optional<ElementKind> parse_element_kind(std::string_view name);
std::string_view to_string(ReferenceCell cell);

/// Displacement expressed in reference-cell coordinates.
class LocalStep {
 public:
  explicit LocalStep(Vec components);
  const Vec& components() const { return v_; }
  int dim() const { return v_.dim(); }
  double operator[](int i) const { return v_[i]; }

 private:
  Vec v_;
};

/// x = A xi + b, mapping the reference cell onto an element.
class AffineMap {
 public:
  /// Throws DegenerateElement when |det A| <= det_threshold.
  AffineMap(Mat matrix, Vec offset, double det_threshold = 0.0);

  const Mat& matrix() const { return matrix_; }
  const Vec& offset() const { return offset_; }
  const Mat& inverse() const { return inverse_; }
  double abs_det() const { return abs_det_; }
  int dim() const { return matrix_.dim(); }

  Vec to_global(const Vec& local_point) const;
  Vec to_local_point(const Vec& global_point) const;

 private:
  Mat matrix_;
  Vec offset_;
  Mat inverse_;
  double abs_det_;
};

/// One mesh cell given by its vertices in the loc-to-glo convention:
///   segment A,B; triangle A,B,C; parallelogram A,B,C[,D=B+C-A];
///   tetrahedron A,B,C,D; parallelepiped A,B,C,D[,E,F,G,H] with
///   E=B+C-A, F=B+D-A, G=B+C+D-2A, H=C+D-A.
/// Immutable after construction.
class MeshElement {
 public:
  MeshElement(ElementKind kind, std::vector<Vec> vertices);

  ElementKind kind() const { return kind_; }
  ReferenceCell reference() const { return reference_cell(kind_); }
  int dim() const { return dimension(kind_); }
  const std::vector<Vec>& vertices() const { return vertices_; }
  /// All corners, implied ones included, in convention order.
  std::vector<Vec> corners() const;
  const AffineMap& map() const { return map_; }

  /// Same cell shifted by `offset`.
  MeshElement translated(const Vec& offset) const;
  /// Same cell scaled about the origin.
  MeshElement scaled(double factor) const;

 private:
  ElementKind kind_;
  std::vector<Vec> vertices_;
  AffineMap map_;
};

AffineMap build_affine_map(const MeshElement& element);

/// Delta xi = A^{-1} Delta x; displacements carry no offset.
LocalStep to_local(const AffineMap& map, const Vec& global_step);

inline constexpr double kContainmentTolerance = 1e-12;

/// Boundary-inclusive membership of a point given in reference coordinates.
bool in_reference_cell(ReferenceCell cell, const Vec& local_point,
                       double tol = kContainmentTolerance);
bool contains(const MeshElement& element, const Vec& point);

/// Uniform point in the reference cell (folding for simplices).
Vec sample_reference(ReferenceCell cell, RandomStream& rng);
Vec sample_uniform(const MeshElement& element, RandomStream& rng);

/// Length, area or volume.
double measure(const MeshElement& element);

}  // namespace escprob
