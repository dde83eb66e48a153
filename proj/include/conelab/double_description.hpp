#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "conelab/vec.hpp"

namespace conelab {

/// Minimal generating system of {x in Q^dim : <a, x> >= 0 for every row a}:
/// the cone equals span(lineality) + cone(rays), rays are pairwise
/// non-equivalent modulo the lineality space and each is extreme there.
struct DdResult {
  std::vector<Vec> lineality;  // basis, normalize_line + sorted
  std::vector<Vec> rays;       // normalize_ray + sorted
};

/// Incremental double description (Motzkin) with the combinatorial
/// adjacency test, exact rational arithmetic throughout.
DdResult double_description(std::size_t dim, std::span<const Vec> constraints);

/// Vertices and recession rays of {z : <h_i, z> >= rhs_i}. Solved by double
/// description on the homogenized cone in dimension dim + 1.
struct PolyhedronVertices {
  std::vector<Vec> vertices;  // sorted lexicographically
  std::vector<Vec> rays;
  bool has_lineality = false;
};

PolyhedronVertices polyhedron_vertices(std::size_t dim, std::span<const Vec> normals, std::span<const Rational> rhs);

}  // namespace conelab
