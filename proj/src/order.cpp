#include "conelab/order.hpp"

#include <algorithm>
#include <string>

#include "conelab/double_description.hpp"
#include "conelab/linalg.hpp"
#include "conelab/lp.hpp"
#include "conelab/random.hpp"

namespace conelab {
namespace {

void check_dim(const PolyhedralCone& cone, const Vec& v) {
  if (v.size() != cone.dim()) fail(ErrorKind::DimensionMismatch, "point length differs from cone dimension");
}

PolyhedronVertices interval_polytope(const PolyhedralCone& cone, const Vec& x, const Vec& y) {
  std::vector<Vec> normals;
  std::vector<Rational> rhs;
  for (const auto& h : cone.facets()) {
    normals.push_back(h);
    rhs.push_back(dot(h, x));
    normals.push_back(-h);
    rhs.push_back(-dot(h, y));
  }
  return polyhedron_vertices(cone.dim(), normals, rhs);
}

constexpr std::int64_t kSampleDenominator = 256;

}  // namespace

std::vector<Vec> interval_vertices(const PolyhedralCone& cone, const Vec& x, const Vec& y) {
  check_dim(cone, x);
  check_dim(cone, y);
  if (!leq(cone, x, y)) fail(ErrorKind::NotComparable, "interval endpoints are not ordered");
  if (x == y) return {x};
  PolyhedronVertices p = interval_polytope(cone, x, y);
  if (p.has_lineality || !p.rays.empty()) fail(ErrorKind::NotPointed, "order interval is unbounded");
  return std::move(p.vertices);
}

std::vector<Vec> interval_sample(const PolyhedralCone& cone, const Vec& x, const Vec& y, std::size_t n,
                                 std::uint64_t seed) {
  const std::vector<Vec> verts = interval_vertices(cone, x, y);
  if (verts.size() == 1) return std::vector<Vec>(n, x);

  const std::size_t d = cone.dim();
  const Vec& base = verts.front();
  std::vector<Vec> diffs;
  for (std::size_t i = 1; i < verts.size(); ++i) diffs.push_back(verts[i] - base);
  std::vector<Vec> frame;
  for (auto i : independent_subset(diffs, d)) frame.push_back(diffs[i]);
  const std::size_t k = frame.size();
  const Matrix to_space = Matrix::from_columns(frame, d);
  const Matrix to_coords = left_inverse(to_space);

  std::vector<Rational> lo(k), hi(k);
  for (std::size_t v = 0; v < verts.size(); ++v) {
    const Vec c = to_coords * (verts[v] - base);
    for (std::size_t j = 0; j < k; ++j) {
      if (v == 0 || c[j] < lo[j]) lo[j] = c[j];
      if (v == 0 || c[j] > hi[j]) hi[j] = c[j];
    }
  }

  Rng rng = Rng::stream(seed, 0);
  std::vector<Vec> out;
  out.reserve(n);
  const std::size_t max_attempts = 100000 + 10000 * n;
  for (std::size_t attempt = 0; out.size() < n; ++attempt) {
    if (attempt == max_attempts) fail(ErrorKind::InternalInconsistency, "rejection sampling of an interval did not converge");
    Vec c(k);
    for (std::size_t j = 0; j < k; ++j) {
      c[j] = lo[j] + (hi[j] - lo[j]) * Rational(rng.between(0, kSampleDenominator), kSampleDenominator);
    }
    Vec z = base + to_space * c;
    if (leq(cone, x, z) && leq(cone, z, y)) out.push_back(std::move(z));
  }
  return out;
}

bool is_totally_ordered(std::span<const Vec> points, const PolyhedralCone& cone) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (!comparable(cone, points[i], points[j])) return false;
    }
  }
  return true;
}

bool extreme_halfline_check(const PolyhedralCone& cone, const Vec& apex, const Vec& direction, std::size_t n,
                            std::uint64_t seed) {
  check_dim(cone, apex);
  const bool exact = is_extreme_vector(cone, direction);

  Rng rng = Rng::stream(seed, 1);
  std::vector<Vec> line{apex};
  for (std::size_t i = 0; i < std::max<std::size_t>(n, 2); ++i) {
    line.push_back(apex + Rational(rng.between(1, 64), 16) * direction);
  }

  // (P1) every pair of half-line points has an upper bound on the half-line.
  bool directed = true;
  for (std::size_t i = 0; i < line.size() && directed; ++i) {
    for (std::size_t j = i + 1; j < line.size() && directed; ++j) {
      const Vec& hi = leq(cone, line[i], line[j]) ? line[j] : line[i];
      directed = leq(cone, line[i], hi) && leq(cone, line[j], hi);
    }
  }
  // (P2) intervals above the apex are chains; the vertices of [apex, y] are
  // included since a non-chain interval always has two incomparable ones.
  bool chains = true;
  for (std::size_t i = 1; i < line.size() && chains; ++i) {
    std::vector<Vec> pts = interval_sample(cone, apex, line[i], n, seed + i);
    for (auto& v : interval_vertices(cone, apex, line[i])) pts.push_back(std::move(v));
    chains = is_totally_ordered(pts, cone);
  }
  // (P3) at least two distinct points.
  const bool two_points = std::any_of(line.begin(), line.end(), [&](const Vec& p) { return p != apex; });

  const bool battery = directed && chains && two_points;
  if (battery != exact) {
    fail(ErrorKind::InternalInconsistency, "half-line battery disagrees with the exact extremality test for " + to_string(direction));
  }
  return exact;
}

namespace {

// Vertices of the intersection of p_i + C, ascending.
std::vector<Vec> upper_bound_vertices(const PolyhedralCone& cone, std::span<const Vec> points, const char* what) {
  if (points.empty()) fail(ErrorKind::InvalidArgument, std::string(what) + " of an empty set");
  for (const auto& p : points) check_dim(cone, p);
  if (!cone.pointed()) fail(ErrorKind::NotPointed, std::string(what) + " needs a pointed cone");

  std::vector<Vec> normals;
  std::vector<Rational> rhs;
  for (const auto& h : cone.facets()) {
    Rational m = dot(h, points.front());
    for (std::size_t i = 1; i < points.size(); ++i) m = std::max(m, dot(h, points[i]));
    normals.push_back(h);
    rhs.push_back(std::move(m));
  }
  return polyhedron_vertices(cone.dim(), normals, rhs).vertices;
}

SupResult from_vertices(std::vector<Vec> v) {
  SupResult out;
  if (v.empty()) {
    out.outcome = SupResult::Outcome::NoUpperBound;
  } else if (v.size() == 1) {
    out.outcome = SupResult::Outcome::Exists;
    out.value = std::move(v.front());
  } else {
    out.outcome = SupResult::Outcome::NoLeastUpperBound;
    out.witnesses = {std::move(v[0]), std::move(v[1])};
  }
  return out;
}

}  // namespace

SupResult supremum(const PolyhedralCone& cone, std::span<const Vec> points) {
  return from_vertices(upper_bound_vertices(cone, points, "supremum"));
}

// The lower-bound set is the negated upper-bound set of -S; its vertices are
// re-sorted so the witnesses are its own two lexicographically smallest.
SupResult infimum(const PolyhedralCone& cone, std::span<const Vec> points) {
  std::vector<Vec> neg;
  neg.reserve(points.size());
  for (const auto& p : points) neg.push_back(-p);
  std::vector<Vec> v = upper_bound_vertices(cone, neg, "infimum");
  for (auto& w : v) w = -w;
  std::sort(v.begin(), v.end());
  return from_vertices(std::move(v));
}

namespace {

std::string path_string(const std::vector<std::size_t>& path) {
  std::string s = "root";
  for (auto i : path) s += "/" + std::to_string(i);
  return s;
}

Vec eval_at(const PolyhedralCone& cone, const InfSupExpr& e, std::vector<std::size_t>& path) {
  if (e.kind() == InfSupExpr::Kind::Leaf) {
    check_dim(cone, e.value());
    return e.value();
  }
  std::vector<Vec> vals;
  vals.reserve(e.children().size());
  for (std::size_t i = 0; i < e.children().size(); ++i) {
    path.push_back(i);
    vals.push_back(eval_at(cone, e.children()[i], path));
    path.pop_back();
  }
  const bool is_sup = e.kind() == InfSupExpr::Kind::Sup;
  SupResult r = is_sup ? supremum(cone, vals) : infimum(cone, vals);
  if (r.outcome != SupResult::Outcome::Exists) throw UndefinedLatticeError(path, std::move(r), is_sup);
  return std::move(r.value);
}

}  // namespace

UndefinedLatticeError::UndefinedLatticeError(std::vector<std::size_t> path, SupResult result, bool is_sup)
    : ConeError(ErrorKind::UndefinedLattice,
                std::string(is_sup ? "supremum" : "infimum") + " undefined at " + path_string(path)),
      path_(std::move(path)),
      result_(std::move(result)),
      is_sup_(is_sup) {}

Vec eval_infsup(const PolyhedralCone& cone, const InfSupExpr& expr) {
  std::vector<std::size_t> path;
  return eval_at(cone, expr, path);
}

bool infsup_linearity_check(const PolyhedralCone& cone, const InfSupExpr& x, const InfSupExpr& y,
                            const Rational& lambda, const Rational& mu) {
  if (lambda.sign() < 0 || mu.sign() < 0) fail(ErrorKind::InvalidArgument, "coefficients must be nonnegative");
  const Vec lhs = eval_infsup(cone, combine(scale(x, lambda), scale(y, mu)));
  const Vec rhs = lambda * eval_infsup(cone, x) + mu * eval_infsup(cone, y);
  return lhs == rhs;
}

std::vector<ExtremeRayReport> classify_engaged(const PolyhedralCone& cone) {
  const auto& rays = cone.extreme_rays();
  const std::size_t d = cone.dim();
  std::vector<ExtremeRayReport> out;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    std::vector<Vec> others;
    for (std::size_t j = 0; j < rays.size(); ++j) {
      if (j != i) others.push_back(rays[j]);
    }
    ExtremeRayReport rep;
    rep.ray_index = i;
    rep.generator = rays[i];
    if (auto coeffs = solve(Matrix::from_columns(others, d), rays[i])) {
      rep.engaged = true;
      Vec full(rays.size());
      for (std::size_t j = 0, k = 0; j < rays.size(); ++j) {
        if (j != i) full[j] = (*coeffs)[k++];
      }
      rep.span_coefficients = std::move(full);
    } else {
      for (const auto& h : nullspace(Matrix::from_rows(others, d))) {
        const int s = dot(h, rays[i]).sign();
        if (s == 0) continue;
        rep.separating_functional = s > 0 ? h : -h;
        break;
      }
      if (!rep.separating_functional) fail(ErrorKind::InternalInconsistency, "no separating functional for a disengaged ray");
    }
    out.push_back(std::move(rep));
  }
  return out;
}

bool verify_certificate(const PolyhedralCone& cone, const ExtremeRayReport& report) {
  const auto& rays = cone.extreme_rays();
  if (report.ray_index >= rays.size() || rays[report.ray_index] != report.generator) return false;
  if (report.span_coefficients.has_value() == report.separating_functional.has_value()) return false;
  if (report.engaged) {
    if (!report.span_coefficients) return false;
    const Vec& c = *report.span_coefficients;
    if (c.size() != rays.size() || !c[report.ray_index].is_zero()) return false;
    Vec sum(cone.dim());
    for (std::size_t j = 0; j < rays.size(); ++j) {
      if (!c[j].is_zero()) sum += c[j] * rays[j];
    }
    return sum == report.generator;
  }
  if (!report.separating_functional) return false;
  const Vec& h = *report.separating_functional;
  if (dot(h, report.generator).sign() <= 0) return false;
  for (std::size_t j = 0; j < rays.size(); ++j) {
    if (j != report.ray_index && !dot(h, rays[j]).is_zero()) return false;
  }
  return true;
}

DisengagedSplit disengaged_split(const PolyhedralCone& cone, std::size_t ray_index) {
  const auto& rays = cone.extreme_rays();
  const std::size_t d = cone.dim();
  if (ray_index >= rays.size()) fail(ErrorKind::InvalidArgument, "ray index out of range");
  if (!cone.generating()) fail(ErrorKind::NotGenerating, "splitting needs a generating cone");
  if (d < 2) fail(ErrorKind::InvalidArgument, "splitting needs dimension at least 2");

  std::vector<Vec> others;
  for (std::size_t j = 0; j < rays.size(); ++j) {
    if (j != ray_index) others.push_back(rays[j]);
  }
  const Vec& r = rays[ray_index];
  if (solve(Matrix::from_columns(others, d), r)) fail(ErrorKind::RayIsEngaged, "ray " + std::to_string(ray_index) + " is engaged");

  std::vector<Vec> cols{r};
  for (auto j : independent_subset(others, d)) cols.push_back(others[j]);
  if (cols.size() != d) fail(ErrorKind::InternalInconsistency, "other rays do not span a hyperplane");

  DisengagedSplit out;
  out.ray_index = ray_index;
  out.ray = r;
  out.basis = Matrix::from_columns(cols, d);
  out.projection = *inverse(out.basis);
  std::vector<Vec> sub_gens;
  for (const auto& g : others) {
    const Vec c = out.projection * g;
    if (!c[0].is_zero()) fail(ErrorKind::InternalInconsistency, "other ray leaves the complementary subspace");
    sub_gens.emplace_back(std::vector<Rational>(c.begin() + 1, c.end()));
  }
  out.subcone = PolyhedralCone::from_generators(d - 1, sub_gens);
  return out;
}

HypothesisVerdict hypothesis_check(const PolyhedralCone& cone) {
  HypothesisVerdict v;
  v.directed = cone.generating();
  v.pointed = cone.pointed();
  if (v.pointed) {
    v.all_extreme_rays_engaged = true;
    for (const auto& rep : classify_engaged(cone)) {
      if (!rep.engaged) {
        v.all_extreme_rays_engaged = false;
        v.disengaged_witness = rep.ray_index;
        break;
      }
    }
  }
  v.holds = v.directed && v.pointed && v.all_extreme_rays_engaged;
  return v;
}

Rational order_unit_norm(const PolyhedralCone& cone, const Vec& u, const Vec& x) {
  check_dim(cone, u);
  check_dim(cone, x);
  for (const auto& h : cone.facets()) {
    if (dot(h, u).sign() <= 0) fail(ErrorKind::NotOrderUnit, to_string(u) + " is not an interior point of the cone");
  }
  if (x.is_zero()) return Rational(0);

  // Variables (lambda, alpha, beta) >= 0 with lambda u - G alpha = x and
  // lambda u - G beta = -x.
  const auto& g = cone.generators();
  const std::size_t d = cone.dim();
  const std::size_t m = g.size();
  Matrix a(2 * d, 1 + 2 * m);
  Vec b(2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    a(i, 0) = u[i];
    a(d + i, 0) = u[i];
    b[i] = x[i];
    b[d + i] = -x[i];
    for (std::size_t j = 0; j < m; ++j) {
      a(i, 1 + j) = -g[j][i];
      a(d + i, 1 + m + j) = -g[j][i];
    }
  }
  Vec c(1 + 2 * m);
  c[0] = 1;
  const LpResult lp = solve_lp(a, b, c);
  if (lp.status != LpStatus::Optimal) fail(ErrorKind::InternalInconsistency, "order-unit LP did not reach an optimum");
  return lp.value;
}

}  // namespace conelab
