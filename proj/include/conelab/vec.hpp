#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "conelab/rational.hpp"

namespace conelab {

/// Point of the ordered space X = Q^d. Equality is componentwise and exact;
/// the ordering operators are lexicographic and only used for canonical sorting.
class Vec {
 public:
  Vec() = default;
  explicit Vec(std::size_t dim) : coords_(dim) {}
  Vec(std::initializer_list<Rational> init) : coords_(init) {}
  explicit Vec(std::vector<Rational> coords) : coords_(std::move(coords)) {}

  static Vec zero(std::size_t dim) { return Vec(dim); }
  static Vec unit(std::size_t dim, std::size_t index);

  std::size_t size() const noexcept { return coords_.size(); }
  bool empty() const noexcept { return coords_.empty(); }
  Rational& operator[](std::size_t i) { return coords_[i]; }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  auto begin() { return coords_.begin(); }
  auto end() { return coords_.end(); }
  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }
  const std::vector<Rational>& coords() const noexcept { return coords_; }
  void push_back(Rational v) { coords_.push_back(std::move(v)); }

  bool is_zero() const noexcept;

  Vec& operator+=(const Vec& rhs);
  Vec& operator-=(const Vec& rhs);
  Vec& operator*=(const Rational& s);

  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(const Rational& s, Vec v) { return v *= s; }
  friend Vec operator*(Vec v, const Rational& s) { return v *= s; }
  Vec operator-() const;

  friend bool operator==(const Vec& a, const Vec& b) = default;
  friend std::strong_ordering operator<=>(const Vec& a, const Vec& b);

 private:
  std::vector<Rational> coords_;
};

Rational dot(const Vec& a, const Vec& b);
/// <h, y - x> without materializing the difference.
Rational dot_diff(const Vec& h, const Vec& y, const Vec& x);

/// Positive rescaling to coprime integer coordinates; the ray is unchanged.
Vec normalize_ray(const Vec& v);
/// normalize_ray followed by a sign flip making the first nonzero entry positive.
Vec normalize_line(const Vec& v);

/// True iff a and b are linearly dependent (including when either is zero).
bool colinear(const Vec& a, const Vec& b);
/// If b = s * a for some scalar s, writes s. Requires a != 0.
bool scalar_multiple(const Vec& a, const Vec& b, Rational& s);

std::string to_string(const Vec& v);

/// Dense exact matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(std::span<const Vec> rows, std::size_t cols);
  static Matrix from_columns(std::span<const Vec> cols, std::size_t rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec row(std::size_t r) const;
  Vec col(std::size_t c) const;
  Matrix transpose() const;

  Vec operator*(const Vec& v) const;
  Matrix operator*(const Matrix& m) const;

  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

}  // namespace conelab
