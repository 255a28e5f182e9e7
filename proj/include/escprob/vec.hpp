#pragma once

#include <array>
#include <cmath>
#include <initializer_list>

namespace escprob {

inline constexpr int kMaxDim = 3;

/// Point or displacement in 1, 2 or 3 dimensions, stored inline.
class Vec {
 public:
  Vec() = default;
  explicit Vec(int dim);
  Vec(std::initializer_list<double> values);

  int dim() const { return dim_; }
  double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }

  double squared_norm() const;
  double norm() const { return std::sqrt(squared_norm()); }
  bool finite() const;

  Vec& operator+=(const Vec& o);
  Vec& operator-=(const Vec& o);
  Vec& operator*=(double s);

  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(Vec a, double s) { return a *= s; }
  friend Vec operator*(double s, Vec a) { return a *= s; }
  friend Vec operator-(Vec a) { return a *= -1.0; }
  friend bool operator==(const Vec& a, const Vec& b);

 private:
  std::array<double, kMaxDim> c_{};
  int dim_ = 0;
};

/// Dense square matrix of order 1..3, row-major.
class Mat {
 public:
  Mat() = default;
  explicit Mat(int dim);
  static Mat identity(int dim);
  /// Matrix whose columns are the given vectors.
  static Mat from_columns(std::initializer_list<Vec> columns);

  int dim() const { return dim_; }
  double& operator()(int r, int c) { return a_[static_cast<std::size_t>(r * kMaxDim + c)]; }
  double operator()(int r, int c) const { return a_[static_cast<std::size_t>(r * kMaxDim + c)]; }

  double determinant() const;
  /// Inverse via the adjugate; caller guarantees a nonzero determinant.
  Mat inverse() const;
  double frobenius_norm() const;
  Vec row(int r) const;
  Vec column(int c) const;

  friend Vec operator*(const Mat& m, const Vec& v);
  friend Mat operator*(const Mat& a, const Mat& b);

 private:
  std::array<double, kMaxDim * kMaxDim> a_{};
  int dim_ = 0;
};

}  // namespace escprob
