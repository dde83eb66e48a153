#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "conelab/cone.hpp"
#include "conelab/errors.hpp"
#include "conelab/infsup.hpp"
#include "conelab/vec.hpp"

namespace conelab {

/// n points of [x, y], drawn uniformly from the bounding box of the interval
/// in coordinates of its affine hull and kept when they land inside.
/// Throws NotComparable unless x <= y, NotPointed for unbounded intervals.
std::vector<Vec> interval_sample(const PolyhedralCone& cone, const Vec& x, const Vec& y, std::size_t n,
                                 std::uint64_t seed);

/// Vertices of the order interval [x, y] (x <= y, bounded).
std::vector<Vec> interval_vertices(const PolyhedralCone& cone, const Vec& x, const Vec& y);

bool is_totally_ordered(std::span<const Vec> points, const PolyhedralCone& cone);

/// Exact extremality of `direction` cross-checked against a sampled battery
/// of the characterization of extreme half-lines (directed, totally ordered
/// intervals above the apex, at least two points). Throws
/// InternalInconsistency when the two disagree.
bool extreme_halfline_check(const PolyhedralCone& cone, const Vec& apex, const Vec& direction, std::size_t n,
                            std::uint64_t seed);

struct SupResult {
  enum class Outcome { Exists, NoUpperBound, NoLeastUpperBound };
  Outcome outcome = Outcome::NoUpperBound;
  Vec value;                   // Exists
  std::vector<Vec> witnesses;  // NoLeastUpperBound: two lexicographically smallest minimal bounds
};

/// Least upper bound of a finite set: U = intersection of p_i + C has a
/// unique vertex exactly when the supremum exists.
SupResult supremum(const PolyhedralCone& cone, std::span<const Vec> points);
/// inf S = -sup(-S).
SupResult infimum(const PolyhedralCone& cone, std::span<const Vec> points);

/// Raised by eval_infsup; path lists child indices from the root to the
/// node whose sup or inf is undefined.
class UndefinedLatticeError : public ConeError {
 public:
  UndefinedLatticeError(std::vector<std::size_t> path, SupResult result, bool is_sup);
  const std::vector<std::size_t>& path() const noexcept { return path_; }
  const SupResult& result() const noexcept { return result_; }
  bool is_sup() const noexcept { return is_sup_; }

 private:
  std::vector<std::size_t> path_;
  SupResult result_;
  bool is_sup_;
};

Vec eval_infsup(const PolyhedralCone& cone, const InfSupExpr& expr);

/// eval(combine(lambda x, mu y)) == lambda eval(x) + mu eval(y), exactly.
bool infsup_linearity_check(const PolyhedralCone& cone, const InfSupExpr& x, const InfSupExpr& y,
                            const Rational& lambda, const Rational& mu);

struct ExtremeRayReport {
  std::size_t ray_index = 0;
  Vec generator;
  bool engaged = false;
  /// Engaged: coefficients over all extreme rays (zero at ray_index) summing to the generator.
  std::optional<Vec> span_coefficients;
  /// Disengaged: functional vanishing on every other extreme generator, positive on this one.
  std::optional<Vec> separating_functional;
};

std::vector<ExtremeRayReport> classify_engaged(const PolyhedralCone& cone);
/// Exact re-verification of the certificate carried by a report.
bool verify_certificate(const PolyhedralCone& cone, const ExtremeRayReport& report);

/// Order isomorphism (X, C) -> (Q + W, Q_+ x subcone) for a disengaged ray r.
/// basis has columns r, w_1, ..., w_{d-1} where the w_i are the first
/// independent other extreme generators; projection = basis^{-1} gives
/// coordinates (t, w). subcone lives in Q^{d-1}.
struct DisengagedSplit {
  std::size_t ray_index = 0;
  Vec ray;
  Matrix basis;
  Matrix projection;
  PolyhedralCone subcone;
};

/// Throws RayIsEngaged, NotPointed, NotGenerating, InvalidArgument (bad index or d < 2).
DisengagedSplit disengaged_split(const PolyhedralCone& cone, std::size_t ray_index);

struct HypothesisVerdict {
  bool directed = false;
  bool pointed = false;
  bool all_extreme_rays_engaged = false;
  bool holds = false;
  std::optional<std::size_t> disengaged_witness;
};

/// Polyhedral form of the inf-sup hull hypothesis: pointed, generating and
/// every extreme ray engaged. Cones with lines report all_extreme_rays_engaged
/// false without a witness ray.
HypothesisVerdict hypothesis_check(const PolyhedralCone& cone);

/// inf{lambda >= 0 : -lambda u <= x <= lambda u} by exact LP over the generators.
/// Throws NotOrderUnit unless u is strictly inside every facet.
Rational order_unit_norm(const PolyhedralCone& cone, const Vec& u, const Vec& x);

}  // namespace conelab
