// Acceptance gate: one PASS/FAIL line per criterion, with pinned tolerances
// and wall-clock limits. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "conelab/battery.hpp"
#include "conelab/cli.hpp"
#include "conelab/errors.hpp"
#include "conelab/linalg.hpp"
#include "conelab/order.hpp"
#include "conelab/psd.hpp"
#include "oracles.hpp"

using namespace conelab;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

using BP = std::vector<std::pair<Rational, Rational>>;

MonotoneBijection pwl() { return MonotoneBijection::piecewise(BP{{0, 0}, {1, 2}, {3, 4}}); }

Matrix random_unimodular(std::size_t d, Rng& rng) {
  Matrix m = Matrix::identity(d);
  for (int k = 0; k < 2 * static_cast<int>(d); ++k) {
    const std::size_t i = rng.below(d);
    std::size_t j = rng.below(d - 1);
    if (j >= i) ++j;
    Matrix e = Matrix::identity(d);
    e(i, j) = Rational(rng.between(-1, 1));
    m = e * m;
  }
  return m;
}

PolyhedralCone image(const Matrix& m, const PolyhedralCone& c) {
  std::vector<Vec> gens;
  for (const auto& g : c.generators()) gens.push_back(m * g);
  return PolyhedralCone::from_generators(c.dim(), gens);
}

IsoSpec linear_onto_image(const PolyhedralCone& c, Rng& rng) {
  const Matrix m = random_unimodular(c.dim(), rng);
  return make_linear_iso(m, c, image(m, c));
}

Vec random_vec(std::size_t d, Rng& rng) {
  Vec v(d);
  for (std::size_t i = 0; i < d; ++i) v[i] = rng.rational(-2, 2, 2);
  return v;
}

IsoSpec translate(const IsoSpec& inner, Rng& rng) {
  return make_affine_iso(inner, random_vec(inner.source().dim(), rng), random_vec(inner.target().dim(), rng));
}

std::optional<std::size_t> first_disengaged(const PolyhedralCone& c) {
  for (const auto& r : classify_engaged(c)) {
    if (!r.engaged) return r.ray_index;
  }
  return std::nullopt;
}

IsoSpec lift_over(const PolyhedralCone& c, std::size_t idx, const MonotoneBijection& g) {
  return make_product_lift(c, idx, g, make_identity(disengaged_split(c, idx).subcone));
}

// Ten random cones (d <= 5): six with engaged rays, four simplicial.
std::vector<PolyhedralCone> random_cone_set() {
  Rng rng(2024);
  std::vector<PolyhedralCone> base{cones::square(),
                                   cones::polygonal(5),
                                   cones::product(cones::square(), cones::orthant(1)),
                                   cones::product(cones::polygonal(4), cones::orthant(2)),
                                   cones::product(cones::two_norm_2d(), cones::polygonal(6)),
                                   PolyhedralCone::from_generators(4, oracle::random_generators(4, 7, rng)),
                                   cones::orthant(2),
                                   cones::orthant(3),
                                   cones::orthant(4),
                                   cones::orthant(5)};
  std::vector<PolyhedralCone> out;
  for (const auto& c : base) out.push_back(image(random_unimodular(c.dim(), rng), c));
  return out;
}

// Five constructed order isomorphisms per cone.
std::vector<IsoSpec> constructed_isos(const std::vector<PolyhedralCone>& cs) {
  Rng rng(77);
  std::vector<IsoSpec> out;
  for (const auto& c : cs) {
    const auto& rays = c.extreme_rays();
    const bool simplicial = rays.size() == c.dim();
    if (!simplicial) {
      const auto lin = linear_onto_image(c, rng);
      out.push_back(lin);
      out.push_back(translate(lin, rng));
      const auto idx = first_disengaged(c);
      const IsoSpec mid = idx ? lift_over(c, *idx, rng.coin() ? pwl() : MonotoneBijection::odd_power(3))
                              : make_compose({lin, linear_onto_image(lin.target(), rng)});
      out.push_back(mid);
      const auto comp = make_compose({mid, linear_onto_image(mid.target(), rng)});
      out.push_back(comp);
      out.push_back(translate(comp, rng));
    } else {
      std::vector<Vec> frame;
      const Matrix m = random_unimodular(c.dim(), rng);
      for (const auto& r : rays) frame.push_back(m * r);
      const std::vector<MonotoneBijection> pw(rays.size(), pwl());
      std::vector<MonotoneBijection> odd(rays.size(), MonotoneBijection::odd_power(3));
      odd[0] = MonotoneBijection::identity();
      const auto dp = make_diagonal_iso(c, frame, pw);
      const auto dodd = make_diagonal_iso(c, frame, odd);
      out.push_back(dp);
      out.push_back(dodd);
      out.push_back(lift_over(c, 0, MonotoneBijection::odd_power(3)));
      out.push_back(make_compose({dp, linear_onto_image(dp.target(), rng)}));
      out.push_back(translate(dodd, rng));
    }
  }
  return out;
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(3);
  s << x;
  return s.str();
}

// ---------------------------------------------------------------------------

Verdict engagement_classification() {
  Verdict v;
  const auto sq = cones::square();
  const auto reports = classify_engaged(sq);
  std::size_t engaged = 0;
  for (const auto& r : reports) engaged += (r.engaged && verify_certificate(sq, r)) ? 1 : 0;
  const bool sq_ok = reports.size() == 4 && engaged == 4 && hypothesis_check(sq).holds;
  bool orth_ok = true;
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto o = cones::orthant(n);
    for (const auto& r : classify_engaged(o)) orth_ok = orth_ok && !r.engaged && verify_certificate(o, r);
    orth_ok = orth_ok && !hypothesis_check(o).holds;
  }
  const auto tn = cones::two_norm_2d();
  std::size_t dis = 0;
  for (const auto& r : classify_engaged(tn)) dis += (!r.engaged && verify_certificate(tn, r)) ? 1 : 0;
  v.pass = sq_ok && orth_ok && dis == 2;
  v.detail = "square " + std::to_string(engaged) + "/4 engaged; orthants 2..6 all disengaged: " +
             (orth_ok ? "yes" : "no") + "; two-norm cone disengaged rays: " + std::to_string(dis);
  return v;
}

Verdict engaged_span_affinity(const std::vector<IsoSpec>& isos) {
  Verdict v;
  std::size_t affine = 0, vacuous = 0, exact_nonzero = 0;
  Rational worst(0);
  for (std::size_t i = 0; i < isos.size(); ++i) {
    const auto& f = isos[i];
    const auto pts = sample_engaged_span(f.source(), f.source_base(), 1000, i);
    try {
      const auto a = check_affine_on(f, pts, default_affine_tolerance(f));
      if (a.affine) ++affine;
      if (f.exact() && !a.max_residual.is_zero()) ++exact_nonzero;
      worst = std::max(worst, a.max_residual);
    } catch (const ConeError& e) {
      if (e.kind() != ErrorKind::DegenerateSpan) throw;
      // No engaged rays: the engaged span is the apex alone.
      ++vacuous;
      ++affine;
    }
  }
  v.pass = isos.size() == 50 && affine == isos.size() && exact_nonzero == 0;
  v.detail = std::to_string(affine) + "/" + std::to_string(isos.size()) + " affine on 1000 engaged-span points (" +
             std::to_string(vacuous) + " with a zero-dimensional engaged span), max residual " + worst.str();
  return v;
}

Verdict desk_test() {
  Verdict v;
  std::vector<PolyhedralCone> cs{cones::square()};
  for (std::size_t m = 4; m <= 8; ++m) cs.push_back(cones::polygonal(m));
  cs.push_back(cones::product(cones::square(), cones::square()));
  cs.push_back(cones::product(cones::square(), cones::polygonal(5)));
  cs.push_back(cones::product(cones::polygonal(4), cones::polygonal(6)));
  cs.push_back(cones::product(cones::polygonal(7), cones::polygonal(8)));

  Rng rng(3);
  std::size_t passed = 0, passed_affine = 0, nonlinear = 0, caught = 0, refused = 0, exceptions = 0, holds = 0;
  for (std::size_t ci = 0; ci < cs.size(); ++ci) {
    const auto& c = cs[ci];
    const std::size_t d = c.dim();
    holds += hypothesis_check(c).holds ? 1 : 0;
    struct Candidate {
      IsoSpec spec;
      bool nonlinear;
    };
    std::vector<Candidate> cands;
    try {
      const auto lin = linear_onto_image(c, rng);
      cands.push_back({make_identity(c), false});
      cands.push_back({lin, false});
      cands.push_back({translate(lin, rng), false});
      cands.push_back({make_compose({lin, linear_onto_image(lin.target(), rng)}), false});
      std::vector<Vec> e;
      for (std::size_t i = 0; i < d; ++i) e.push_back(Vec::unit(d, i));
      cands.push_back({make_diagonal_iso_unchecked(c, e, e, std::vector(d, MonotoneBijection::odd_power(3)), c), true});
      std::vector<Vec> frame;
      const auto& rays = c.extreme_rays();
      for (auto i : independent_subset(rays, d)) frame.push_back(rays[i]);
      cands.push_back({make_diagonal_iso_unchecked(c, frame, frame, std::vector(d, pwl()), c), true});
      Matrix stretch = Matrix::identity(d);
      stretch(0, 0) = Rational(2);
      cands.push_back({make_linear_iso_unchecked(stretch, c, c), false});
    } catch (const ConeError&) {
      ++exceptions;
      continue;
    }
    try {
      (void)lift_over(c, 0, pwl());
    } catch (const ConeError& e) {
      if (e.kind() == ErrorKind::RayIsEngaged) ++refused;
      else ++exceptions;
    }
    for (std::size_t k = 0; k < cands.size(); ++k) {
      const auto& [f, nl] = cands[k];
      nonlinear += nl ? 1 : 0;
      try {
        const auto r = check_order_iso_sampled(f, 10000, 100 * ci + k, Execution::Serial, true);
        if (r.verdict == IsoReport::Verdict::PassedSampling) {
          ++passed;
          std::vector<Vec> pts;
          for (int i = 0; i < 200; ++i) pts.push_back(f.source_base() + random_cone_element(c, rng));
          if (check_affine_on(f, pts, default_affine_tolerance(f)).affine) ++passed_affine;
        } else {
          const bool witnessed = !(r.order_preserving_violations.empty() && r.inverse_violations.empty());
          if (nl && witnessed && reverify_witnesses(f, r)) ++caught;
        }
      } catch (const ConeError& e) {
        ++exceptions;
        v.detail += std::string(" [") + e.what() + "]";
      }
    }
  }
  v.pass = holds == cs.size() && passed == passed_affine && caught == nonlinear && exceptions == 0;
  v.detail = std::to_string(holds) + " cones with the hypothesis; " + std::to_string(passed_affine) + "/" +
             std::to_string(passed) + " passing candidates affine; " + std::to_string(caught) + "/" +
             std::to_string(nonlinear) + " nonlinear candidates caught with witnesses; " + std::to_string(refused) +
             " product lifts refused (all rays engaged); exceptions " + std::to_string(exceptions) + v.detail;
  return v;
}

Verdict counterexamples(const std::vector<PolyhedralCone>& random_set) {
  Verdict v;
  std::vector<PolyhedralCone> cs{cones::two_norm_2d(), cones::polygonal(3),
                                 cones::product(cones::square(), cones::orthant(1))};
  for (std::size_t n = 2; n <= 6; ++n) cs.push_back(cones::orthant(n));
  for (const auto& c : random_set) cs.push_back(c);
  std::size_t with_ray = 0, ok = 0;
  Rng rng(4);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const auto idx = first_disengaged(cs[i]);
    if (!idx) continue;
    ++with_ray;
    const auto f = lift_over(cs[i], *idx, pwl());
    const auto r = check_order_iso_sampled(f, 10000, i);
    std::vector<Vec> pts;
    for (int k = 0; k < 100; ++k) pts.push_back(random_cone_element(cs[i], rng));
    const auto a = check_affine_on(f, pts, Rational(0));
    if (r.verdict == IsoReport::Verdict::PassedSampling && r.preservation_failures == 0 && r.inverse_failures == 0 &&
        !a.affine && a.max_residual.sign() > 0) {
      ++ok;
    }
  }
  v.pass = with_ray > 0 && ok == with_ray;
  v.detail = std::to_string(ok) + "/" + std::to_string(with_ray) +
             " cones with a disengaged ray give a nonlinear lift passing 10^4 samples";
  return v;
}

Verdict identity_checks(const std::vector<IsoSpec>& isos) {
  Verdict v;
  std::size_t par = 0, add = 0, par_fail = 0, add_fail = 0, linear_ok = 0, linear_total = 0, indep_fail = 0;
  for (std::size_t i = 0; i < isos.size(); ++i) {
    const auto& f = isos[i];
    const auto& c = f.source();
    const Vec& a = f.source_base();
    const auto& rays = c.extreme_rays();
    Rng rng = Rng::stream(5, i);
    for (int k = 0; k < 1000; ++k) {
      const Vec x = a + random_cone_element(c, rng);
      const std::size_t p = rng.below(rays.size());
      std::size_t q = rng.below(rays.size() - 1);
      if (q >= p) ++q;
      ++par;
      if (!check_parallelogram(f, x, rng.rational(1, 3, 4) * rays[p], rng.rational(1, 3, 4) * rays[q])) ++par_fail;

      std::vector<Vec> s;
      Vec total = x;
      for (const auto& r : rays) {
        if (!rng.coin()) continue;
        Vec t = rng.rational(1, 2, 4) * r;
        if (rng.coin() && leq(c, a, x - t) && leq(c, a, total - t)) t = -t;
        total += t;
        s.push_back(std::move(t));
      }
      if (s.empty()) s.push_back(rays[p]);
      ++add;
      if (!check_additivity(f, x, s)) ++add_fail;
    }

    const bool linear_kind = f.affine_by_construction();
    const auto reports = classify_engaged(c);
    const std::vector<Rational> lambdas{Rational(1, 3), Rational(1, 2), Rational(2), Rational(7, 2)};
    std::vector<Vec> bases{a};
    for (int b = 0; b < 3; ++b) bases.push_back(a + random_cone_element(c, rng));
    bool lin_ok = true;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      const auto table = extract_g_r(f, rays[r], bases, lambdas);
      for (std::size_t l = 0; l < lambdas.size(); ++l) {
        for (std::size_t b = 0; b < bases.size(); ++b) {
          const auto& row = table[b * lambdas.size() + l];
          if (linear_kind && row.g != row.lambda) lin_ok = false;
          if (reports[r].engaged && row.g != table[l].g) ++indep_fail;
        }
      }
    }
    if (linear_kind) {
      ++linear_total;
      linear_ok += lin_ok ? 1 : 0;
    }
  }
  v.pass = par_fail == 0 && add_fail == 0 && linear_ok == linear_total && indep_fail == 0;
  v.detail = "parallelogram " + std::to_string(par - par_fail) + "/" + std::to_string(par) + ", additivity " +
             std::to_string(add - add_fail) + "/" + std::to_string(add) + ", g(l)=l on " + std::to_string(linear_ok) +
             "/" + std::to_string(linear_total) + " linear isos, basepoint dependence on engaged rays: " +
             std::to_string(indep_fail);
  return v;
}

Verdict lattice_oracle() {
  Verdict v;
  Rng rng(6);
  std::size_t agree = 0, total = 0, exists = 0;
  while (total < 500) {
    const std::size_t d = 1 + rng.below(3);
    const auto gens = oracle::random_generators(d, d + rng.below(3), rng);
    const auto c = PolyhedralCone::from_generators(d, gens);
    std::vector<Vec> pts;
    for (std::size_t i = 0, k = 1 + rng.below(3); i < k; ++i) pts.push_back(random_vec(d, rng));
    const bool sup = rng.coin();
    std::vector<Vec> q = pts;
    if (!sup) {
      for (auto& p : q) p = -p;
    }
    const auto mub = oracle::minimal_upper_bounds(oracle::extreme_rays(gens, d), q, d);
    const auto r = sup ? supremum(c, pts) : infimum(c, pts);
    bool same = false;
    if (mub.size() == 1) {
      same = r.outcome == SupResult::Outcome::Exists && r.value == (sup ? mub[0] : -mub[0]);
      ++exists;
    } else if (mub.size() >= 2) {
      std::vector<Vec> w{mub[0], mub[1]};
      if (!sup) {
        std::vector<Vec> all;
        for (const auto& m : mub) all.push_back(-m);
        std::sort(all.begin(), all.end());
        w = {all[0], all[1]};
      }
      same = r.outcome == SupResult::Outcome::NoLeastUpperBound && r.witnesses == w;
    }
    agree += same ? 1 : 0;
    ++total;
  }
  const auto sq = cones::square();
  const std::vector<Vec> a{Vec{1, 1, 1}, Vec{-1, -1, 1}}, b{Vec{1, 0, 1}, Vec{-1, 0, 1}};
  const auto ra = supremum(sq, a), rb = supremum(sq, b);
  const bool fixed = ra.outcome == SupResult::Outcome::Exists && ra.value == Vec{0, 0, 2} &&
                     rb.outcome == SupResult::Outcome::NoLeastUpperBound;
  v.pass = agree == total && fixed;
  v.detail = std::to_string(agree) + "/" + std::to_string(total) + " random instances agree (" + std::to_string(exists) +
             " with a supremum); square-cone instances: " + (fixed ? "(0,0,2) and no least upper bound" : "MISMATCH");
  return v;
}

Verdict psd_suite() {
  Verdict v;
  const auto et = psd::engagement_trials(1000, 7);
  Rng rng(8);
  std::size_t inconsistent = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 2 + rng.below(7);
    const auto b = psd::SymMatrix::identity(n) + psd::random_psd(n, rng) * rng.uniform();
    if (psd::identity_sup_check(b, 20, t).verdict == psd::SupCheck::Verdict::Inconsistent) ++inconsistent;
  }
  const auto flag = psd::identity_sup_check(psd::SymMatrix::diagonal({1, 0.5}), 1000, 0);
  const bool flagged = flag.verdict == psd::SupCheck::Verdict::NotUpperBound && flag.witness.has_value();
  const auto a = psd::random_psd(4, rng) + psd::SymMatrix::identity(4) * 0.05;
  const auto cb = psd::conjugation_battery(a, 10000, 9);
  bool monotone = true;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + rng.below(7);
    const auto rows = psd::infsup_approx(psd::random_psd(n, rng), 3 * n, t);
    for (std::size_t k = 1; k < rows.size(); ++k) {
      monotone = monotone && rows[k].d <= rows[k - 1].d + 1e-9 && rows[k].e <= rows[k - 1].e + 1e-9;
    }
  }
  v.pass = et.max_residual <= 1e-10 && inconsistent == 0 && flagged && cb.failures == 0 && monotone;
  v.detail = "witness max residual " + fmt(et.max_residual) + " over 1000 trials; inconsistent sup checks " +
             std::to_string(inconsistent) + "/1000; diag(1,0.5) flagged: " + (flagged ? "yes" : "no") +
             "; conjugation changed " + std::to_string(cb.failures) + "/" + std::to_string(cb.pairs) +
             " comparisons; approximation tables monotone: " + (monotone ? "yes" : "no");
  return v;
}

Verdict exactness(const std::vector<IsoSpec>& isos) {
  Verdict v;
  Rng rng(10);
  std::size_t round = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = 1 + rng.below(5);
    const std::size_t m = 1 + rng.below(10);
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < m; ++i) gens.push_back(random_vec(d, rng));
    const auto c = PolyhedralCone::from_generators(d, gens);
    const auto h = PolyhedralCone::from_facets(d, c.facets());
    if (h == c && PolyhedralCone::from_generators(d, h.generators()) == c) ++round;
  }
  std::size_t exact_isos = 0, exact_ok = 0;
  for (std::size_t i = 0; i < isos.size(); ++i) {
    const auto& f = isos[i];
    if (!f.exact()) continue;
    ++exact_isos;
    Rng r = Rng::stream(11, i);
    bool ok = true;
    for (int k = 0; k < 1000 && ok; ++k) {
      const Vec x = f.source_base() + random_cone_element(f.source(), r);
      bool exact = false;
      ok = f.invert(f.eval(x), &exact) == x && exact;
    }
    exact_ok += ok ? 1 : 0;
  }
  const std::string dir = CONELAB_DATA_DIR;
  const std::vector<std::vector<std::string>> cmds{
      {"check-iso", dir + "/square-cone.json", dir + "/square-forged.json", "--seed", "3", "--samples", "2000"},
      {"check-iso", dir + "/twonorm2d.json", dir + "/twonorm-lift.json", "--seed", "5", "--samples", "2000"},
      {"classify", dir + "/square-cone.json"},
      {"supremum", dir + "/square-cone.json", dir + "/square-sup-undefined.json"},
      {"psd", "supcheck", "--b", "diag:1,0.5", "--seed", "2", "--samples", "500"}};
  std::size_t identical = 0;
  for (const auto& cmd : cmds) {
    std::ostringstream o1, o2, o3, e;
    const int c1 = cli::run(cmd, o1, e);
    const int c2 = cli::run(cmd, o2, e);
    auto par = cmd;
    par.push_back("--parallel");
    const int c3 = cli::run(par, o3, e);
    if (o1.str() == o2.str() && o1.str() == o3.str() && c1 == c2 && c1 == c3) ++identical;
  }
  v.pass = round == 200 && exact_ok == exact_isos && identical == cmds.size();
  v.detail = "V-H roundtrip " + std::to_string(round) + "/200; invert(eval(x)) = x on 1000 samples for " +
             std::to_string(exact_ok) + "/" + std::to_string(exact_isos) + " exact isos; byte-identical CLI reports " +
             std::to_string(identical) + "/" + std::to_string(cmds.size());
  return v;
}

}  // namespace

int main() {
  using Clock = std::chrono::steady_clock;
  const auto random_set = random_cone_set();
  const auto isos = constructed_isos(random_set);

  struct Criterion {
    int id;
    const char* name;
    double limit;
    std::function<Verdict()> body;
  };
  const std::vector<Criterion> criteria{
      {1, "engagement classification", 1.0, engagement_classification},
      {2, "affine on the engaged span", 20.0, [&] { return engaged_span_affinity(isos); }},
      {3, "hypothesis cones: passing candidates are affine", 30.0, desk_test},
      {4, "nonlinear lifts over disengaged rays", 5.0, [&] { return counterexamples(random_set); }},
      {5, "parallelogram, additivity and g_r identities", 10.0, [&] { return identity_checks(isos); }},
      {6, "suprema and infima against vertex enumeration", 10.0, lattice_oracle},
      {7, "PSD cone suite", 30.0, psd_suite},
      {8, "exactness and reproducibility", 20.0, [&] { return exactness(isos); }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    Verdict v;
    const auto t0 = Clock::now();
    try {
      v = c.body();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    const bool in_time = secs <= c.limit;
    const bool pass = v.pass && in_time;
    failures += pass ? 0 : 1;
    std::cout << (pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << " (" << fmt(secs) << " s, limit "
              << c.limit << " s" << (in_time ? "" : ", TIME LIMIT EXCEEDED") << "): " << v.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
