#include "escprob/vec.hpp"

#include <stdexcept>

#include "escprob/errors.hpp"

namespace escprob {

namespace {

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxDim) throw DimensionMismatch("dimension must be 1, 2 or 3");
}

void check_same(int a, int b) {
  if (a != b) throw DimensionMismatch("operand dimensions differ");
}

}  // namespace

Vec::Vec(int dim) : dim_(dim) { check_dim(dim); }

Vec::Vec(std::initializer_list<double> values) : dim_(static_cast<int>(values.size())) {
  check_dim(dim_);
  int i = 0;
  for (double v : values) c_[static_cast<std::size_t>(i++)] = v;
}

double Vec::squared_norm() const {
  double s = 0.0;
  for (int i = 0; i < dim_; ++i) s += (*this)[i] * (*this)[i];
  return s;
}

bool Vec::finite() const {
  for (int i = 0; i < dim_; ++i)
    if (!std::isfinite((*this)[i])) return false;
  return true;
}

Vec& Vec::operator+=(const Vec& o) {
  check_same(dim_, o.dim_);
  for (int i = 0; i < dim_; ++i) (*this)[i] += o[i];
  return *this;
}

Vec& Vec::operator-=(const Vec& o) {
  check_same(dim_, o.dim_);
  for (int i = 0; i < dim_; ++i) (*this)[i] -= o[i];
  return *this;
}

Vec& Vec::operator*=(double s) {
  for (int i = 0; i < dim_; ++i) (*this)[i] *= s;
  return *this;
}

bool operator==(const Vec& a, const Vec& b) {
  if (a.dim_ != b.dim_) return false;
  for (int i = 0; i < a.dim_; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

Mat::Mat(int dim) : dim_(dim) { check_dim(dim); }

Mat Mat::identity(int dim) {
  Mat m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

Mat Mat::from_columns(std::initializer_list<Vec> columns) {
  Mat m(static_cast<int>(columns.size()));
  int c = 0;
  for (const Vec& col : columns) {
    check_same(col.dim(), m.dim_);
    for (int r = 0; r < m.dim_; ++r) m(r, c) = col[r];
    ++c;
  }
  return m;
}

double Mat::determinant() const {
  const Mat& m = *this;
  switch (dim_) {
    case 1:
      return m(0, 0);
    case 2:
      return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    case 3:
      return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
             m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
             m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    default:
      throw DimensionMismatch("empty matrix");
  }
}

Mat Mat::inverse() const {
  const Mat& m = *this;
  const double det = determinant();
  Mat inv(dim_);
  switch (dim_) {
    case 1:
      inv(0, 0) = 1.0 / m(0, 0);
      break;
    case 2:
      inv(0, 0) = m(1, 1) / det;
      inv(0, 1) = -m(0, 1) / det;
      inv(1, 0) = -m(1, 0) / det;
      inv(1, 1) = m(0, 0) / det;
      break;
    case 3:
      inv(0, 0) = (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) / det;
      inv(0, 1) = (m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2)) / det;
      inv(0, 2) = (m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1)) / det;
      inv(1, 0) = (m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2)) / det;
      inv(1, 1) = (m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)) / det;
      inv(1, 2) = (m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2)) / det;
      inv(2, 0) = (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0)) / det;
      inv(2, 1) = (m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1)) / det;
      inv(2, 2) = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)) / det;
      break;
    default:
      throw DimensionMismatch("empty matrix");
  }
  return inv;
}

double Mat::frobenius_norm() const {
  double s = 0.0;
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) s += (*this)(r, c) * (*this)(r, c);
  return std::sqrt(s);
}

Vec Mat::row(int r) const {
  Vec v(dim_);
  for (int c = 0; c < dim_; ++c) v[c] = (*this)(r, c);
  return v;
}

Vec Mat::column(int c) const {
  Vec v(dim_);
  for (int r = 0; r < dim_; ++r) v[r] = (*this)(r, c);
  return v;
}

Vec operator*(const Mat& m, const Vec& v) {
  check_same(m.dim_, v.dim());
  Vec out(m.dim_);
  for (int r = 0; r < m.dim_; ++r) {
    double s = 0.0;
    for (int c = 0; c < m.dim_; ++c) s += m(r, c) * v[c];
    out[r] = s;
  }
  return out;
}

Mat operator*(const Mat& a, const Mat& b) {
  check_same(a.dim_, b.dim_);
  Mat out(a.dim_);
  for (int r = 0; r < a.dim_; ++r)
    for (int c = 0; c < a.dim_; ++c) {
      double s = 0.0;
      for (int k = 0; k < a.dim_; ++k) s += a(r, k) * b(k, c);
      out(r, c) = s;
    }
  return out;
}

}  // namespace escprob
