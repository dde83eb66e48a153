#include "conelab/cone.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "conelab/double_description.hpp"
#include "conelab/errors.hpp"
#include "conelab/linalg.hpp"
#include "conelab/lp.hpp"

namespace conelab {
namespace {

void check_dim(std::size_t dim, const Vec& v, const char* what) {
  if (v.size() != dim) fail(ErrorKind::DimensionMismatch, std::string(what) + ": expected length " + std::to_string(dim));
}

// Descending lexicographic order: for the orthant this lists e_1, ..., e_d.
void sort_canonical(std::vector<Vec>& v) { std::sort(v.begin(), v.end(), std::greater<>()); }

// Canonical basis of a subspace: nonzero rows of the reduced echelon form.
std::vector<Vec> canonical_basis(const std::vector<Vec>& basis, std::size_t dim) {
  if (basis.empty()) return {};
  const RowEchelon e = rref(Matrix::from_rows(basis, dim));
  std::vector<Vec> out;
  for (std::size_t i = 0; i < e.pivots.size(); ++i) out.push_back(normalize_line(e.reduced.row(i)));
  sort_canonical(out);
  return out;
}

// Representative of v modulo span(basis) orthogonal to that span.
Vec project_out(const Vec& v, const std::vector<Vec>& basis, std::size_t dim) {
  if (basis.empty()) return v;
  const Matrix d = Matrix::from_columns(basis, dim);
  const Vec coeffs = left_inverse(d) * v;
  return v - d * coeffs;
}

std::vector<Vec> canonical_rays(const std::vector<Vec>& rays, const std::vector<Vec>& lineality, std::size_t dim) {
  std::vector<Vec> out;
  out.reserve(rays.size());
  for (const auto& r : rays) out.push_back(normalize_ray(project_out(r, lineality, dim)));
  sort_canonical(out);
  return out;
}

}  // namespace

PolyhedralCone PolyhedralCone::from_dual(std::size_t dim, std::vector<Vec> lineality, std::vector<Vec> rays) {
  PolyhedralCone c;
  c.dim_ = dim;
  c.lineality_ = canonical_basis(lineality, dim);
  c.rays_ = canonical_rays(rays, c.lineality_, dim);
  c.generators_ = c.rays_;
  for (const auto& l : c.lineality_) {
    c.generators_.push_back(l);
    c.generators_.push_back(-l);
  }
  sort_canonical(c.generators_);
  c.generating_ = rank(c.generators_, dim) == dim;
  return c;
}

PolyhedralCone PolyhedralCone::from_generators(std::size_t dim, std::span<const Vec> gens) {
  if (dim == 0) fail(ErrorKind::InvalidArgument, "cone dimension must be positive");
  std::vector<Vec> nonzero;
  for (const auto& g : gens) {
    check_dim(dim, g, "generator");
    if (!g.is_zero()) nonzero.push_back(g);
  }
  // Dual cone {h : <h, g> >= 0}: its extreme rays are the facets of C and
  // its lineality space is the orthogonal complement of span(C).
  const DdResult dual = double_description(dim, nonzero);
  const std::vector<Vec> equations = canonical_basis(dual.lineality, dim);
  std::vector<Vec> facets = canonical_rays(dual.rays, equations, dim);
  for (const auto& e : equations) {
    facets.push_back(e);
    facets.push_back(-e);
  }
  sort_canonical(facets);

  const DdResult primal = double_description(dim, facets);
  PolyhedralCone c = from_dual(dim, primal.lineality, primal.rays);
  c.facets_ = std::move(facets);
  return c;
}

PolyhedralCone PolyhedralCone::from_facets(std::size_t dim, std::span<const Vec> facets) {
  if (dim == 0) fail(ErrorKind::InvalidArgument, "cone dimension must be positive");
  for (const auto& h : facets) check_dim(dim, h, "facet");
  const DdResult primal = double_description(dim, facets);
  std::vector<Vec> gens = primal.rays;
  for (const auto& l : primal.lineality) {
    gens.push_back(l);
    gens.push_back(-l);
  }
  return from_generators(dim, gens);
}

const std::vector<Vec>& PolyhedralCone::extreme_rays() const {
  if (!pointed()) fail(ErrorKind::NotPointed, "cone contains a line; extreme rays are undefined");
  return rays_;
}

std::optional<std::size_t> PolyhedralCone::ray_index(const Vec& r) const {
  check_dim(dim_, r, "ray");
  if (r.is_zero()) return std::nullopt;
  const Vec n = normalize_ray(r);
  const auto it = std::lower_bound(rays_.begin(), rays_.end(), n, std::greater<>());
  if (it == rays_.end() || *it != n) return std::nullopt;
  return static_cast<std::size_t>(it - rays_.begin());
}

bool contains(const PolyhedralCone& cone, const Vec& x) {
  check_dim(cone.dim(), x, "point");
  for (const auto& h : cone.facets()) {
    if (dot(h, x).sign() < 0) return false;
  }
  return true;
}

bool leq(const PolyhedralCone& cone, const Vec& x, const Vec& y) {
  check_dim(cone.dim(), x, "point");
  check_dim(cone.dim(), y, "point");
  for (const auto& h : cone.facets()) {
    if (dot_diff(h, y, x).sign() < 0) return false;
  }
  return true;
}

bool comparable(const PolyhedralCone& cone, const Vec& x, const Vec& y) {
  return leq(cone, x, y) || leq(cone, y, x);
}

bool is_extreme_vector(const PolyhedralCone& cone, const Vec& r) {
  if (r.is_zero() || !contains(cone, r)) fail(ErrorKind::NotInCone, "extremality test needs a nonzero cone element");
  if (!cone.pointed()) fail(ErrorKind::NotPointed, "cone contains a line; extreme rays are undefined");
  std::vector<Vec> tight;
  for (const auto& h : cone.facets()) {
    if (dot(h, r).is_zero()) tight.push_back(h);
  }
  return rank(tight, cone.dim()) + 1 == cone.dim();
}

bool is_signed_extreme(const PolyhedralCone& cone, const Vec& r) {
  if (r.is_zero()) return false;
  if (contains(cone, r)) return is_extreme_vector(cone, r);
  const Vec neg = -r;
  return contains(cone, neg) && is_extreme_vector(cone, neg);
}

std::vector<ConicTerm> caratheodory_decompose(const PolyhedralCone& cone, const Vec& x) {
  if (!contains(cone, x)) fail(ErrorKind::NotInCone, "point is not in the cone");
  const auto& rays = cone.extreme_rays();
  if (x.is_zero()) return {};
  // Lexicographically maximal coefficient vector over the generators in
  // canonical order: a vertex of {alpha >= 0 : G alpha = x}, so at most
  // rank(G) terms, and independent of pivoting details.
  const std::vector<Vec>& cols = rays;
  const std::size_t m = cols.size();
  const std::size_t d = cone.dim();
  std::vector<Rational> fixed;
  Vec residual = x;
  for (std::size_t i = 0; i < m && !residual.is_zero(); ++i) {
    const std::size_t free = m - i;
    Matrix a(d, free);
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < free; ++c) a(r, c) = cols[i + c][r];
    }
    Vec cost(free);
    cost[0] = -1;
    const LpResult lp = solve_lp(a, residual, cost);
    if (lp.status != LpStatus::Optimal) fail(ErrorKind::InternalInconsistency, "member of the cone has no conic decomposition");
    fixed.push_back(lp.x[0]);
    if (!lp.x[0].is_zero()) residual -= lp.x[0] * cols[i];
  }
  std::vector<ConicTerm> out;
  for (std::size_t i = 0; i < fixed.size(); ++i) {
    if (!fixed[i].is_zero()) out.push_back({fixed[i], cols[i]});
  }
  return out;
}

namespace cones {

PolyhedralCone orthant(std::size_t n) {
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < n; ++i) gens.push_back(Vec::unit(n, i));
  return PolyhedralCone::from_generators(n, gens);
}

PolyhedralCone square() {
  std::vector<Vec> gens;
  for (int a : {-1, 1}) {
    for (int b : {-1, 1}) gens.push_back(Vec{a, b, 1});
  }
  return PolyhedralCone::from_generators(3, gens);
}

PolyhedralCone two_norm_2d() {
  const std::vector<Vec> gens{Vec{1, 1}, Vec{-1, 1}};
  return PolyhedralCone::from_generators(2, gens);
}

PolyhedralCone polygonal(std::size_t m) {
  if (m < 3) fail(ErrorKind::InvalidArgument, "a polygon needs at least 3 vertices");
  std::vector<Vec> gens;
  for (std::size_t k = 0; k < m; ++k) {
    // Angles spread over (-pi, pi); t = tan(theta / 2) rounded to quarters.
    const double theta = -std::numbers::pi + 2.0 * std::numbers::pi * (static_cast<double>(k) + 0.5) / static_cast<double>(m);
    const auto steps = static_cast<std::int64_t>(std::llround(std::tan(theta / 2.0) * 4.0));
    const Rational t(steps, 4);
    const Rational t2 = t * t;
    gens.push_back(normalize_ray(Vec{Rational(1) - t2, Rational(2) * t, Rational(1) + t2}));
  }
  return PolyhedralCone::from_generators(3, gens);
}

PolyhedralCone product(const PolyhedralCone& a, const PolyhedralCone& b) {
  const std::size_t d = a.dim() + b.dim();
  std::vector<Vec> gens;
  for (const auto& g : a.generators()) {
    Vec v(d);
    for (std::size_t i = 0; i < a.dim(); ++i) v[i] = g[i];
    gens.push_back(std::move(v));
  }
  for (const auto& g : b.generators()) {
    Vec v(d);
    for (std::size_t i = 0; i < b.dim(); ++i) v[a.dim() + i] = g[i];
    gens.push_back(std::move(v));
  }
  return PolyhedralCone::from_generators(d, gens);
}

PolyhedralCone whole_space(std::size_t n) { return PolyhedralCone::from_facets(n, {}); }

}  // namespace cones

}  // namespace conelab
