#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "conelab/cone.hpp"
#include "conelab/iso.hpp"
#include "conelab/random.hpp"

namespace conelab {

/// Serial loops are the reference; Parallel fans the same per-sample work
/// out over OpenMP threads and merges in sample order, so both produce
/// identical reports.
enum class Execution { Serial, Parallel };

struct PairWitness {
  Vec x;
  Vec y;
  friend bool operator==(const PairWitness&, const PairWitness&) = default;
};

struct IsoReport {
  enum class Verdict { PassedSampling, Violation };
  Verdict verdict = Verdict::PassedSampling;
  std::size_t samples_run = 0;
  std::size_t preservation_failures = 0;
  std::size_t inverse_failures = 0;
  std::size_t approximate_inverses = 0;
  /// x <=_C y with f(x) not <=_K f(y). At most kMaxWitnesses kept.
  std::vector<PairWitness> order_preserving_violations;
  /// u <=_K v with f^{-1}(u) not <=_C f^{-1}(v). At most kMaxWitnesses kept.
  std::vector<PairWitness> inverse_violations;

  static constexpr std::size_t kMaxWitnesses = 8;
  friend bool operator==(const IsoReport&, const IsoReport&) = default;
};

/// n samples, each drawn from its own stream Rng::stream(seed, i) and made of
/// four pair tests: a comparable and an incomparable pair on each side,
/// the target-side pairs pulled back through invert(). With stop_early the
/// run ends after the first 256-sample block that contains a violation.
IsoReport check_order_iso_sampled(const IsoSpec& spec, std::size_t n, std::uint64_t seed,
                                  Execution exec = Execution::Serial, bool stop_early = false);

/// Every witness in the report still fails when recomputed.
bool reverify_witnesses(const IsoSpec& spec, const IsoReport& report);

/// Nonnegative combination of a random nonempty subset of generators with
/// coefficients in {1/4, ..., 3}; zero only for the trivial cone.
Vec random_cone_element(const PolyhedralCone& cone, Rng& rng);

/// Points a + sum c_i e_i over random subsets of the engaged extreme
/// generators e_i (the engaged span above a). Throws NotPointed.
std::vector<Vec> sample_engaged_span(const PolyhedralCone& cone, const Vec& apex, std::size_t n, std::uint64_t seed);

/// f(x + r + s) - f(x + s) == f(x + r) - f(x). Throws NotExtreme, SameRay, OutOfDomain.
bool check_parallelogram(const IsoSpec& spec, const Vec& x, const Vec& r, const Vec& s);

/// f(x + sum s_i) - f(x) == sum (f(x + s_i) - f(x)) for extreme vectors s_i
/// of either sign on pairwise distinct rays. Throws NotExtreme, SameRay, OutOfDomain.
bool check_additivity(const IsoSpec& spec, const Vec& x, std::span<const Vec> s_list);

struct GrRow {
  Rational lambda;
  std::size_t basepoint = 0;
  Rational g;
};

/// Scalars g with f(x + lambda r) - f(x) = g (f(x + r) - f(x)).
/// Throws NotExtreme, OutOfDomain, NotColinear.
std::vector<GrRow> extract_g_r(const IsoSpec& spec, const Vec& r, std::span<const Vec> basepoints,
                               std::span<const Rational> lambdas);

struct AffineVerdict {
  bool affine = false;
  Rational max_residual;
  std::size_t worst_point = 0;
  std::size_t hull_dim = 0;
  /// Fitted map p -> linear p + offset, determined on the affine hull of the points.
  Matrix linear;
  Vec offset;
};

/// Tolerance for check_affine_on: 0 for exact specs, 10^-9 otherwise.
Rational default_affine_tolerance(const IsoSpec& spec);

/// Fits the affine map through a maximal affinely independent subset of the
/// points and measures the largest coordinate residual at the others.
/// Throws DegenerateSpan unless the points span a hull of dimension k >= 1
/// and number at least k + 2; OutOfDomain.
AffineVerdict check_affine_on(const IsoSpec& spec, std::span<const Vec> points, const Rational& tolerance);

struct HomogeneityVerdict {
  bool holds = true;
  std::optional<Vec> u;
  std::optional<Rational> lambda;
};

/// f(lambda u) == lambda f(u) on all pairs. Throws OutOfDomain, InvalidArgument for negative scalars.
HomogeneityVerdict check_positively_homogeneous(const IsoSpec& spec, std::span<const Vec> samples,
                                                std::span<const Rational> scalars);

struct HalflineVerdict {
  bool holds = true;
  Vec direction;              // common image direction when holds
  std::vector<Vec> witness;   // source points whose images break the half-line
};

/// Images of apex + lambda r (lambda > 0) lie on one half-line from f(apex)
/// whose direction is extreme in the target. Throws NotExtreme, OutOfDomain.
HalflineVerdict halfline_image_check(const IsoSpec& spec, const Vec& apex, const Vec& r,
                                     std::span<const Rational> lambdas);

}  // namespace conelab
