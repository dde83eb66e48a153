#include "conelab/battery.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "conelab/errors.hpp"
#include "conelab/linalg.hpp"
#include "conelab/order.hpp"

namespace conelab {
namespace {

constexpr std::size_t kBlock = 256;
constexpr int kIncomparableTries = 8;

// Order test for points produced by an approximate inverse: relative slack 1e-9.
bool leq_tolerant(const PolyhedralCone& cone, const Vec& x, const Vec& y) {
  for (const auto& h : cone.facets()) {
    const Rational v = dot_diff(h, y, x);
    if (v.sign() >= 0) continue;
    double scale = 1.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
      scale += std::fabs(h[i].to_double()) * std::max(std::fabs(x[i].to_double()), std::fabs(y[i].to_double()));
    }
    if (v.to_double() < -1e-9 * scale) return false;
  }
  return true;
}

struct SampleOutcome {
  std::size_t preservation = 0;
  std::size_t inverse = 0;
  std::size_t approximate = 0;
  std::vector<PairWitness> pres_witnesses;
  std::vector<PairWitness> inv_witnesses;
  std::exception_ptr error;
};

Vec random_domain_point(const IsoSpec& spec, Rng& rng) {
  return spec.source_base() + random_cone_element(spec.source(), rng);
}

Vec random_range_point(const IsoSpec& spec, Rng& rng) {
  return spec.target_base() + random_cone_element(spec.target(), rng);
}

SampleOutcome run_sample(const IsoSpec& spec, std::uint64_t seed, std::size_t index) {
  SampleOutcome out;
  try {
    Rng rng = Rng::stream(seed, index);
    const PolyhedralCone& c = spec.source();
    const PolyhedralCone& k = spec.target();

    // Comparable pair in the source: f must preserve it.
    {
      const Vec x = random_domain_point(spec, rng);
      const Vec y = x + random_cone_element(c, rng);
      if (!leq(k, spec.eval(x), spec.eval(y))) {
        ++out.preservation;
        out.pres_witnesses.push_back({x, y});
      }
    }
    // Incomparable pair in the source: f must not create a comparability.
    for (int t = 0; t < kIncomparableTries; ++t) {
      const Vec x = random_domain_point(spec, rng);
      const Vec y = random_domain_point(spec, rng);
      if (comparable(c, x, y)) continue;
      const Vec fx = spec.eval(x);
      const Vec fy = spec.eval(y);
      if (leq(k, fx, fy)) {
        ++out.inverse;
        out.inv_witnesses.push_back({fx, fy});
      } else if (leq(k, fy, fx)) {
        ++out.inverse;
        out.inv_witnesses.push_back({fy, fx});
      }
      break;
    }
    // Comparable pair in the target: the inverse must preserve it.
    {
      const Vec u = random_range_point(spec, rng);
      const Vec v = u + random_cone_element(k, rng);
      bool eu = true, ev = true;
      const Vec x = spec.invert(u, &eu);
      const Vec y = spec.invert(v, &ev);
      const bool exact = eu && ev;
      if (!exact) ++out.approximate;
      if (!(exact ? leq(c, x, y) : leq_tolerant(c, x, y))) {
        ++out.inverse;
        out.inv_witnesses.push_back({u, v});
      }
    }
    // Incomparable pair in the target: its preimages must be incomparable too.
    for (int t = 0; t < kIncomparableTries; ++t) {
      const Vec u = random_range_point(spec, rng);
      const Vec v = random_range_point(spec, rng);
      if (comparable(k, u, v)) continue;
      bool eu = true, ev = true;
      const Vec x = spec.invert(u, &eu);
      const Vec y = spec.invert(v, &ev);
      if (!(eu && ev)) {
        ++out.approximate;
        break;  // comparability of approximate preimages is not decidable exactly
      }
      if (leq(c, x, y)) {
        ++out.preservation;
        out.pres_witnesses.push_back({x, y});
      } else if (leq(c, y, x)) {
        ++out.preservation;
        out.pres_witnesses.push_back({y, x});
      }
      break;
    }
  } catch (...) {
    out.error = std::current_exception();
  }
  return out;
}

void merge(IsoReport& report, SampleOutcome& s) {
  report.preservation_failures += s.preservation;
  report.inverse_failures += s.inverse;
  report.approximate_inverses += s.approximate;
  for (auto& w : s.pres_witnesses) {
    if (report.order_preserving_violations.size() < IsoReport::kMaxWitnesses) {
      report.order_preserving_violations.push_back(std::move(w));
    }
  }
  for (auto& w : s.inv_witnesses) {
    if (report.inverse_violations.size() < IsoReport::kMaxWitnesses) report.inverse_violations.push_back(std::move(w));
  }
}

}  // namespace

Vec random_cone_element(const PolyhedralCone& cone, Rng& rng) {
  const auto& gens = cone.generators();
  Vec out = Vec::zero(cone.dim());
  if (gens.empty()) return out;
  bool any = false;
  for (const auto& g : gens) {
    if (!rng.coin()) continue;
    out += Rational(rng.between(1, 12), 4) * g;
    any = true;
  }
  if (!any) out += Rational(rng.between(1, 12), 4) * gens[rng.below(gens.size())];
  return out;
}

IsoReport check_order_iso_sampled(const IsoSpec& spec, std::size_t n, std::uint64_t seed, Execution exec,
                                  bool stop_early) {
  IsoReport report;
  std::vector<SampleOutcome> block;
  for (std::size_t start = 0; start < n; start += kBlock) {
    const std::size_t len = std::min(kBlock, n - start);
    block.assign(len, SampleOutcome{});
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 8)
      for (std::size_t i = 0; i < len; ++i) block[i] = run_sample(spec, seed, start + i);
    } else {
      for (std::size_t i = 0; i < len; ++i) block[i] = run_sample(spec, seed, start + i);
    }
    for (auto& s : block) {
      if (s.error) std::rethrow_exception(s.error);
      merge(report, s);
    }
    report.samples_run = start + len;
    if (stop_early && report.preservation_failures + report.inverse_failures > 0) break;
  }
  report.verdict = report.preservation_failures + report.inverse_failures > 0 ? IsoReport::Verdict::Violation
                                                                            : IsoReport::Verdict::PassedSampling;
  return report;
}

bool reverify_witnesses(const IsoSpec& spec, const IsoReport& report) {
  for (const auto& w : report.order_preserving_violations) {
    if (!leq(spec.source(), w.x, w.y)) return false;
    if (leq(spec.target(), spec.eval(w.x), spec.eval(w.y))) return false;
  }
  for (const auto& w : report.inverse_violations) {
    if (!leq(spec.target(), w.x, w.y)) return false;
    bool ex = true, ey = true;
    const Vec a = spec.invert(w.x, &ex);
    const Vec b = spec.invert(w.y, &ey);
    if (ex && ey ? leq(spec.source(), a, b) : leq_tolerant(spec.source(), a, b)) return false;
  }
  return true;
}

std::vector<Vec> sample_engaged_span(const PolyhedralCone& cone, const Vec& apex, std::size_t n, std::uint64_t seed) {
  if (apex.size() != cone.dim()) fail(ErrorKind::DimensionMismatch, "apex length");
  std::vector<Vec> engaged;
  for (const auto& rep : classify_engaged(cone)) {
    if (rep.engaged) engaged.push_back(rep.generator);
  }
  Rng rng = Rng::stream(seed, 2);
  std::vector<Vec> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec p = apex;
    for (const auto& e : engaged) {
      if (rng.coin()) p += Rational(rng.between(1, 12), 4) * e;
    }
    out.push_back(std::move(p));
  }
  return out;
}

namespace {

void require_extreme(const PolyhedralCone& cone, const Vec& r) {
  bool ok = false;
  try {
    ok = is_signed_extreme(cone, r);
  } catch (const ConeError& e) {
    if (e.kind() != ErrorKind::NotInCone) throw;
  }
  if (!ok) fail(ErrorKind::NotExtreme, to_string(r) + " is not an extreme vector");
}

void require_domain(const IsoSpec& spec, const Vec& x) {
  if (!spec.in_domain(x)) fail(ErrorKind::OutOfDomain, to_string(x) + " is outside the domain");
}

}  // namespace

bool check_parallelogram(const IsoSpec& spec, const Vec& x, const Vec& r, const Vec& s) {
  const PolyhedralCone& c = spec.source();
  require_extreme(c, r);
  require_extreme(c, s);
  if (colinear(r, s)) fail(ErrorKind::SameRay, "r and s span the same line");
  for (const Vec& p : {x, Vec(x + r), Vec(x + s), Vec(x + r + s)}) require_domain(spec, p);
  return spec.eval(x + r + s) - spec.eval(x + s) == spec.eval(x + r) - spec.eval(x);
}

bool check_additivity(const IsoSpec& spec, const Vec& x, std::span<const Vec> s_list) {
  const PolyhedralCone& c = spec.source();
  for (std::size_t i = 0; i < s_list.size(); ++i) {
    require_extreme(c, s_list[i]);
    for (std::size_t j = 0; j < i; ++j) {
      if (colinear(s_list[i], s_list[j])) fail(ErrorKind::SameRay, "two vectors span the same line");
    }
  }
  require_domain(spec, x);
  Vec total = x;
  for (const auto& s : s_list) {
    require_domain(spec, x + s);
    total += s;
  }
  require_domain(spec, total);
  const Vec fx = spec.eval(x);
  Vec sum = Vec::zero(fx.size());
  for (const auto& s : s_list) sum += spec.eval(x + s) - fx;
  return spec.eval(total) - fx == sum;
}

std::vector<GrRow> extract_g_r(const IsoSpec& spec, const Vec& r, std::span<const Vec> basepoints,
                               std::span<const Rational> lambdas) {
  const PolyhedralCone& c = spec.source();
  bool extreme = false;
  try {
    extreme = is_extreme_vector(c, r);
  } catch (const ConeError& e) {
    if (e.kind() != ErrorKind::NotInCone) throw;
  }
  if (!extreme) fail(ErrorKind::NotExtreme, to_string(r) + " is not an extreme vector");

  std::vector<GrRow> table;
  for (std::size_t b = 0; b < basepoints.size(); ++b) {
    const Vec& x = basepoints[b];
    require_domain(spec, x);
    require_domain(spec, x + r);
    const Vec fx = spec.eval(x);
    const Vec unit = spec.eval(x + r) - fx;
    if (unit.is_zero()) fail(ErrorKind::NotColinear, "f(x + r) = f(x): the map is not injective");
    for (const auto& lambda : lambdas) {
      const Vec p = x + lambda * r;
      require_domain(spec, p);
      Rational g;
      if (!scalar_multiple(unit, spec.eval(p) - fx, g)) {
        fail(ErrorKind::NotColinear, "increments along " + to_string(r) + " from " + to_string(x) + " are not colinear");
      }
      table.push_back({lambda, b, std::move(g)});
    }
  }
  return table;
}

Rational default_affine_tolerance(const IsoSpec& spec) {
  return spec.exact() ? Rational(0) : Rational(1, 1000000000);
}

AffineVerdict check_affine_on(const IsoSpec& spec, std::span<const Vec> points, const Rational& tolerance) {
  if (points.empty()) fail(ErrorKind::DegenerateSpan, "no points");
  for (const auto& p : points) require_domain(spec, p);
  const std::size_t d = spec.source().dim();
  const Vec& p0 = points.front();
  std::vector<Vec> diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - p0);
  const std::vector<std::size_t> chosen = independent_subset(diffs, d);
  const std::size_t k = chosen.size();
  if (k == 0 || points.size() < k + 2) {
    fail(ErrorKind::DegenerateSpan, "need at least k + 2 points spanning a k-dimensional hull, k >= 1");
  }

  std::vector<Vec> images;
  images.reserve(points.size());
  for (const auto& p : points) images.push_back(spec.eval(p));
  const std::size_t e = images.front().size();

  std::vector<Vec> dcols, ecols;
  for (auto i : chosen) {
    dcols.push_back(diffs[i]);
    ecols.push_back(images[i + 1] - images[0]);
  }
  AffineVerdict v;
  v.hull_dim = k;
  v.linear = Matrix::from_columns(ecols, e) * left_inverse(Matrix::from_columns(dcols, d));
  v.offset = images[0] - v.linear * p0;
  v.max_residual = Rational(0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Vec res = images[i] - (v.linear * points[i] + v.offset);
    for (const auto& r : res) {
      const Rational a = abs(r);
      if (a > v.max_residual) {
        v.max_residual = a;
        v.worst_point = i;
      }
    }
  }
  v.affine = v.max_residual <= tolerance;
  return v;
}

HomogeneityVerdict check_positively_homogeneous(const IsoSpec& spec, std::span<const Vec> samples,
                                                std::span<const Rational> scalars) {
  HomogeneityVerdict v;
  for (const auto& lambda : scalars) {
    if (lambda.sign() < 0) fail(ErrorKind::InvalidArgument, "scalars must be nonnegative");
  }
  for (const auto& u : samples) {
    require_domain(spec, u);
    const Vec fu = spec.eval(u);
    for (const auto& lambda : scalars) {
      const Vec lu = lambda * u;
      require_domain(spec, lu);
      if (spec.eval(lu) != lambda * fu) {
        v.holds = false;
        v.u = u;
        v.lambda = lambda;
        return v;
      }
    }
  }
  return v;
}

HalflineVerdict halfline_image_check(const IsoSpec& spec, const Vec& apex, const Vec& r,
                                     std::span<const Rational> lambdas) {
  bool extreme = false;
  try {
    extreme = is_extreme_vector(spec.source(), r);
  } catch (const ConeError& e) {
    if (e.kind() != ErrorKind::NotInCone) throw;
  }
  if (!extreme) fail(ErrorKind::NotExtreme, to_string(r) + " is not an extreme vector");
  require_domain(spec, apex);
  for (const auto& l : lambdas) {
    if (l.sign() <= 0) fail(ErrorKind::InvalidArgument, "half-line parameters must be positive");
  }

  HalflineVerdict v;
  const Vec fa = spec.eval(apex);
  std::optional<std::size_t> first;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const Vec p = apex + lambdas[i] * r;
    const Vec q = spec.eval(p) - fa;
    if (q.is_zero()) {
      v.holds = false;
      v.witness = {apex, p};
      return v;
    }
    if (!first) {
      first = i;
      v.direction = normalize_ray(q);
      continue;
    }
    Rational s;
    if (!scalar_multiple(v.direction, q, s) || s.sign() <= 0) {
      v.holds = false;
      v.witness = {apex, apex + lambdas[*first] * r, p};
      return v;
    }
  }
  if (first) {
    bool target_extreme = false;
    try {
      target_extreme = is_extreme_vector(spec.target(), v.direction);
    } catch (const ConeError& e) {
      if (e.kind() != ErrorKind::NotInCone) throw;
    }
    if (!target_extreme) {
      v.holds = false;
      v.witness = {apex, apex + lambdas[*first] * r};
    }
  }
  return v;
}

}  // namespace conelab
