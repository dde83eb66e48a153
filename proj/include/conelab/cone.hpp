#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "conelab/rational.hpp"
#include "conelab/vec.hpp"

namespace conelab {

/// Finitely generated cone C in Q^d with both descriptions kept in sync.
///
/// Canonical form: generators are the extreme rays scaled to coprime integer
/// vectors and sorted in decreasing lexicographic order (the orthant lists
/// e_1, ..., e_d); facets are the inner normals of a minimal H-description
/// (x in C iff <h, x> >= 0 for every facet h), scaled and sorted the same
/// way. For a cone that is not full-dimensional the H-description contains
/// each implicit equation as a pair h, -h. For a
/// cone that is not pointed the generators additionally contain +-l for
/// every lineality basis vector l.
///
/// Immutable after construction and safe to share across threads.
class PolyhedralCone {
 public:
  /// Placeholder with dim() == 0; not a valid cone.
  PolyhedralCone() = default;

  /// Minkowski-Weyl from the V side. Zero generators are dropped; an empty
  /// (or all-zero) list yields the trivial cone {0}.
  static PolyhedralCone from_generators(std::size_t dim, std::span<const Vec> gens);
  /// Minkowski-Weyl from the H side. An empty list yields the whole space.
  static PolyhedralCone from_facets(std::size_t dim, std::span<const Vec> facets);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Vec>& generators() const noexcept { return generators_; }
  const std::vector<Vec>& facets() const noexcept { return facets_; }
  const std::vector<Vec>& lineality() const noexcept { return lineality_; }
  bool pointed() const noexcept { return lineality_.empty(); }
  bool generating() const noexcept { return generating_; }

  /// Extreme generators; throws NotPointed when the cone contains a line.
  const std::vector<Vec>& extreme_rays() const;
  /// Index of the extreme ray spanned by r (r need not be normalized).
  std::optional<std::size_t> ray_index(const Vec& r) const;

  friend bool operator==(const PolyhedralCone& a, const PolyhedralCone& b) {
    return a.dim_ == b.dim_ && a.generators_ == b.generators_ && a.facets_ == b.facets_;
  }

 private:
  static PolyhedralCone from_dual(std::size_t dim, std::vector<Vec> lineality, std::vector<Vec> rays);

  std::size_t dim_ = 0;
  std::vector<Vec> generators_;
  std::vector<Vec> rays_;
  std::vector<Vec> facets_;
  std::vector<Vec> lineality_;
  bool generating_ = false;
};

/// Membership: every facet inequality holds.
bool contains(const PolyhedralCone& cone, const Vec& x);
/// x <=_C y  iff  y - x in C.
bool leq(const PolyhedralCone& cone, const Vec& x, const Vec& y);
bool comparable(const PolyhedralCone& cone, const Vec& x, const Vec& y);

/// r spans an extreme ray: the facets tight at r have rank d - 1.
/// Throws NotInCone unless r is a nonzero element of C, NotPointed for cones with lines.
bool is_extreme_vector(const PolyhedralCone& cone, const Vec& r);
/// Extreme in either sign: r or -r is an extreme vector of C.
bool is_signed_extreme(const PolyhedralCone& cone, const Vec& r);

struct ConicTerm {
  Rational coefficient;
  Vec generator;
};

/// x as a nonnegative combination of at most d extreme generators (a basic
/// feasible solution of the exact simplex), or the empty sum for x = 0.
std::vector<ConicTerm> caratheodory_decompose(const PolyhedralCone& cone, const Vec& x);

/// Standard cones used across tests, examples and the CLI.
namespace cones {
PolyhedralCone orthant(std::size_t n);
/// {(a, b, l) : max(|a|, |b|) <= l}, generators (+-1, +-1, 1).
PolyhedralCone square();
/// {(a, l) : |a| <= l}, generators (+-1, 1).
PolyhedralCone two_norm_2d();
/// Cone over a convex polygon with m vertices on the unit circle, rational
/// points from the parametrization ((1-t^2)/(1+t^2), 2t/(1+t^2)).
PolyhedralCone polygonal(std::size_t m);
/// C1 x C2 in the direct sum.
PolyhedralCone product(const PolyhedralCone& a, const PolyhedralCone& b);
PolyhedralCone whole_space(std::size_t n);
}  // namespace cones

}  // namespace conelab
