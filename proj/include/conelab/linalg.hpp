#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "conelab/vec.hpp"

namespace conelab {

struct RowEchelon {
  Matrix reduced;                    // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
};

RowEchelon rref(Matrix m);

std::size_t rank(const Matrix& m);
/// Rank of a family of vectors of common length `dim`.
std::size_t rank(std::span<const Vec> vectors, std::size_t dim);

/// Basis of {x : m x = 0}, normalized to coprime integer vectors.
std::vector<Vec> nullspace(const Matrix& m);

/// Some solution of m x = b (free variables set to zero), or nullopt.
std::optional<Vec> solve(const Matrix& m, const Vec& b);

std::optional<Matrix> inverse(const Matrix& m);

/// Indices of a maximal linearly independent subfamily, chosen greedily in order.
std::vector<std::size_t> independent_subset(std::span<const Vec> vectors, std::size_t dim);

/// Left inverse (D^T D)^{-1} D^T of a full-column-rank matrix.
Matrix left_inverse(const Matrix& d);

}  // namespace conelab
