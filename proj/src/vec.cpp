#include "conelab/vec.hpp"

#include <algorithm>

#include "conelab/errors.hpp"

namespace conelab {

Vec Vec::unit(std::size_t dim, std::size_t index) {
  Vec v(dim);
  v[index] = 1;
  return v;
}

bool Vec::is_zero() const noexcept {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& q) { return q.is_zero(); });
}

Vec& Vec::operator+=(const Vec& rhs) {
  if (rhs.size() != size()) fail(ErrorKind::DimensionMismatch, "vector addition");
  for (std::size_t i = 0; i < size(); ++i) {
    if (!rhs[i].is_zero()) coords_[i] += rhs[i];
  }
  return *this;
}

Vec& Vec::operator-=(const Vec& rhs) {
  if (rhs.size() != size()) fail(ErrorKind::DimensionMismatch, "vector subtraction");
  for (std::size_t i = 0; i < size(); ++i) {
    if (!rhs[i].is_zero()) coords_[i] -= rhs[i];
  }
  return *this;
}

Vec& Vec::operator*=(const Rational& s) {
  for (auto& c : coords_) {
    if (!c.is_zero()) c *= s;
  }
  return *this;
}

Vec Vec::operator-() const {
  Vec r(*this);
  for (auto& c : r.coords_) c = -c;
  return r;
}

std::strong_ordering operator<=>(const Vec& a, const Vec& b) {
  return std::lexicographical_compare_three_way(a.coords_.begin(), a.coords_.end(), b.coords_.begin(),
                                                b.coords_.end());
}

Rational dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) fail(ErrorKind::DimensionMismatch, "dot product");
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  }
  return s;
}

Rational dot_diff(const Vec& h, const Vec& y, const Vec& x) {
  if (h.size() != y.size() || h.size() != x.size()) fail(ErrorKind::DimensionMismatch, "dot product");
  Rational s;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h[i].is_zero()) continue;
    if (y[i] == x[i]) continue;
    s += h[i] * (y[i] - x[i]);
  }
  return s;
}

Vec normalize_ray(const Vec& v) {
  Rational den_lcm(1);
  for (const auto& c : v) {
    if (!c.is_zero()) den_lcm = integer_lcm(den_lcm, c.denominator());
  }
  Vec scaled = v * den_lcm;
  Rational num_gcd(0);
  for (const auto& c : scaled) {
    if (!c.is_zero()) num_gcd = integer_gcd(num_gcd, c);
  }
  if (num_gcd.is_zero()) return scaled;
  if (num_gcd != Rational(1)) {
    for (auto& c : scaled) c /= num_gcd;
  }
  return scaled;
}

Vec normalize_line(const Vec& v) {
  Vec r = normalize_ray(v);
  for (const auto& c : r) {
    if (c.is_zero()) continue;
    if (c.sign() < 0) r = -r;
    break;
  }
  return r;
}

bool scalar_multiple(const Vec& a, const Vec& b, Rational& s) {
  if (a.size() != b.size()) fail(ErrorKind::DimensionMismatch, "scalar_multiple");
  std::size_t pivot = a.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_zero()) {
      pivot = i;
      break;
    }
  }
  if (pivot == a.size()) fail(ErrorKind::InvalidArgument, "scalar_multiple of the zero vector");
  const Rational ratio = b[pivot] / a[pivot];
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b[i] != ratio * a[i]) return false;
  }
  s = ratio;
  return true;
}

bool colinear(const Vec& a, const Vec& b) {
  if (a.is_zero() || b.is_zero()) return true;
  Rational s;
  return scalar_multiple(a, b, s);
}

std::string to_string(const Vec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i != 0) out += ",";
    out += v[i].str();
  }
  return out + ")";
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(std::span<const Vec> rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) fail(ErrorKind::DimensionMismatch, "matrix row length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::from_columns(std::span<const Vec> cols, std::size_t rows) {
  Matrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) fail(ErrorKind::DimensionMismatch, "matrix column length");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

Vec Matrix::row(std::size_t r) const {
  Vec v(cols_);
  for (std::size_t c = 0; c < cols_; ++c) v[c] = (*this)(r, c);
  return v;
}

Vec Matrix::col(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

Vec Matrix::operator*(const Vec& v) const {
  if (v.size() != cols_) fail(ErrorKind::DimensionMismatch, "matrix-vector product");
  Vec out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Rational s;
    for (std::size_t c = 0; c < cols_; ++c) {
      const Rational& a = (*this)(r, c);
      if (!a.is_zero() && !v[c].is_zero()) s += a * v[c];
    }
    out[r] = std::move(s);
  }
  return out;
}

Matrix Matrix::operator*(const Matrix& m) const {
  if (m.rows_ != cols_) fail(ErrorKind::DimensionMismatch, "matrix product");
  Matrix out(rows_, m.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(r, k);
      if (a.is_zero()) continue;
      for (std::size_t c = 0; c < m.cols_; ++c) {
        if (!m(k, c).is_zero()) out(r, c) += a * m(k, c);
      }
    }
  }
  return out;
}

}  // namespace conelab
