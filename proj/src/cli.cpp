#include "conelab/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "conelab/battery.hpp"
#include "conelab/io.hpp"
#include "conelab/order.hpp"
#include "conelab/psd.hpp"

namespace conelab::cli {
namespace {

using io::Json;

struct Config {
  std::uint64_t seed = 0;
  std::size_t samples = 10000;
  std::string tol;
  std::string out_path;
  bool parallel = false;
  bool summary = false;

  Execution exec() const { return parallel ? Execution::Parallel : Execution::Serial; }
};

struct Outcome {
  std::string text;  // report body, newline-terminated
  int code = kOk;
  std::string summary;
};

Json header(const std::string& command, const Config& cfg) {
  Json j;
  j["command"] = command;
  j["seed"] = cfg.seed;
  j["samples"] = cfg.samples;
  return j;
}

Outcome json_outcome(const Json& j, int code, std::string summary) {
  return {j.dump(2) + "\n", code, std::move(summary)};
}

Vec vec_from_arg(const std::string& s) {
  Vec v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(Rational::parse(item));
  if (v.empty()) fail(ErrorKind::ParseError, "empty vector argument");
  return v;
}

std::string vec_text(const Vec& v) { return to_string(v); }

PolyhedralCone load_cone(const std::string& path) { return io::cone_from_json(io::read_json_file(path)); }

std::vector<Vec> load_points(const std::string& path, std::size_t dim) {
  auto pts = io::points_from_json(io::read_json_file(path));
  if (pts.empty()) fail(ErrorKind::InvalidArgument, "points file is empty");
  for (const auto& p : pts) {
    if (p.size() != dim) fail(ErrorKind::DimensionMismatch, "point " + to_string(p) + " does not match the cone dimension");
  }
  return pts;
}

psd::PsdTolerance psd_tolerance(const Config& cfg) {
  psd::PsdTolerance tol;
  if (!cfg.tol.empty()) tol.cmp_tol = Rational::parse(cfg.tol).to_double();
  return tol;
}

// ---- cone commands ----

Outcome cmd_extreme_rays(const Config& cfg, const std::string& cone_path) {
  const auto cone = load_cone(cone_path);
  const auto& rays = cone.extreme_rays();
  Json j = header("extreme-rays", cfg);
  j["cone"] = io::to_json(cone);
  j["extreme_rays"] = io::to_json(rays);
  return json_outcome(j, kOk, std::to_string(rays.size()) + " extreme rays, " + std::to_string(cone.facets().size()) +
                                  " facets");
}

Outcome cmd_classify(const Config& cfg, const std::string& cone_path) {
  const auto cone = load_cone(cone_path);
  const auto reports = classify_engaged(cone);
  const auto verdict = hypothesis_check(cone);
  Json j = header("classify", cfg);
  j["dim"] = cone.dim();
  Json rs = Json::array();
  std::size_t engaged = 0;
  for (const auto& r : reports) {
    Json rj = io::to_json(r);
    rj["certificate_verified"] = verify_certificate(cone, r);
    rs.push_back(std::move(rj));
    engaged += r.engaged ? 1 : 0;
  }
  j["extreme_rays"] = std::move(rs);
  j["hypothesis"] = io::to_json(verdict);
  return json_outcome(j, verdict.holds ? kOk : kNegative,
                      std::to_string(engaged) + " of " + std::to_string(reports.size()) + " rays engaged, hypothesis " +
                          (verdict.holds ? "holds" : "fails"));
}

Outcome cmd_hypothesis(const Config& cfg, const std::string& cone_path) {
  const auto cone = load_cone(cone_path);
  const auto verdict = hypothesis_check(cone);
  Json j = header("hypothesis", cfg);
  j["dim"] = cone.dim();
  j["hypothesis"] = io::to_json(verdict);
  return json_outcome(j, verdict.holds ? kOk : kNegative, std::string("hypothesis ") + (verdict.holds ? "holds" : "fails"));
}

Outcome lattice_outcome(const std::string& command, const Config& cfg, const SupResult& r, const std::string& what) {
  Json j = header(command, cfg);
  j["result"] = io::to_json(r);
  if (r.outcome == SupResult::Outcome::Exists) {
    return json_outcome(j, kOk, what + " = " + vec_text(r.value));
  }
  std::string s = what + (r.outcome == SupResult::Outcome::NoUpperBound ? ": no bound" : ": no least bound, witnesses");
  for (const auto& w : r.witnesses) s += " " + vec_text(w);
  return json_outcome(j, kUndefinedLattice, s);
}

Outcome cmd_supremum(const Config& cfg, const std::string& cone_path, const std::string& points_path, bool sup) {
  const auto cone = load_cone(cone_path);
  const auto pts = load_points(points_path, cone.dim());
  const auto r = sup ? supremum(cone, pts) : infimum(cone, pts);
  return lattice_outcome(sup ? "supremum" : "infimum", cfg, r, sup ? "sup" : "inf");
}

Outcome cmd_evalexpr(const Config& cfg, const std::string& cone_path, const std::string& expr_path) {
  const auto cone = load_cone(cone_path);
  const auto expr = io::expr_from_json(io::read_json_file(expr_path));
  if (expr.dim() != cone.dim()) fail(ErrorKind::DimensionMismatch, "expression does not match the cone dimension");
  Json j = header("evalexpr", cfg);
  try {
    const Vec v = eval_infsup(cone, expr);
    j["value"] = io::to_json(v);
    return json_outcome(j, kOk, "value = " + vec_text(v));
  } catch (const UndefinedLatticeError& e) {
    Json u;
    u["operation"] = e.is_sup() ? "sup" : "inf";
    u["path"] = e.path();
    u["result"] = io::to_json(e.result());
    j["undefined"] = std::move(u);
    return json_outcome(j, kUndefinedLattice, e.what());
  }
}

Outcome cmd_unitnorm(const Config& cfg, const std::string& cone_path, const std::string& u_arg, const std::string& x_arg) {
  const auto cone = load_cone(cone_path);
  const Vec u = vec_from_arg(u_arg);
  const Vec x = vec_from_arg(x_arg);
  if (u.size() != cone.dim() || x.size() != cone.dim()) {
    fail(ErrorKind::DimensionMismatch, "--u and --x must match the cone dimension");
  }
  const Rational n = order_unit_norm(cone, u, x);
  Json j = header("unitnorm", cfg);
  j["u"] = io::to_json(u);
  j["x"] = io::to_json(x);
  j["norm"] = n.str();
  return json_outcome(j, kOk, "norm = " + n.str());
}

// ---- check-iso ----

struct IdentityTally {
  std::size_t tested = 0;
  std::size_t failures = 0;
  Json witness = nullptr;
};

Json tally_json(const IdentityTally& t) {
  Json j;
  j["tested"] = t.tested;
  j["failures"] = t.failures;
  j["witness"] = t.witness;
  return j;
}

Outcome cmd_check_iso(const Config& cfg, const std::string& cone_path, const std::string& iso_path) {
  const auto cone = load_cone(cone_path);
  const auto spec = io::iso_from_json(io::read_json_file(iso_path), cone);
  const Vec& a = spec.source_base();

  Json j = header("check-iso", cfg);
  j["spec"] = io::iso_summary(spec);

  const IsoReport battery = check_order_iso_sampled(spec, cfg.samples, cfg.seed, cfg.exec());
  Json bj = io::to_json(battery);
  bj["witnesses_reverified"] = reverify_witnesses(spec, battery);
  j["order_iso_battery"] = std::move(bj);
  if (battery.verdict == IsoReport::Verdict::Violation) {
    std::string s = "order-isomorphism battery: violation";
    const auto& w = battery.order_preserving_violations.empty() ? battery.inverse_violations
                                                                : battery.order_preserving_violations;
    if (!w.empty()) s += " at " + vec_text(w.front().x) + " , " + vec_text(w.front().y);
    return json_outcome(j, kViolation, s);
  }

  const std::size_t configs = std::clamp<std::size_t>(cfg.samples / 10, 1, 200);
  Rng rng = Rng::stream(cfg.seed, std::uint64_t{1} << 40);
  bool identity_failure = false;

  std::vector<Vec> rays;
  std::vector<bool> engaged;
  if (cone.pointed()) {
    rays = cone.extreme_rays();
    for (const auto& r : classify_engaged(cone)) engaged.push_back(r.engaged);
  }

  // Extreme half-lines map onto extreme half-lines.
  {
    IdentityTally t;
    const std::vector<Rational> lambdas{Rational(1, 4), Rational(1, 2), Rational(1), Rational(2), Rational(5)};
    for (const auto& r : rays) {
      ++t.tested;
      const auto hv = halfline_image_check(spec, a, r, lambdas);
      if (!hv.holds) {
        ++t.failures;
        if (t.witness.is_null()) t.witness = Json{{"apex", io::to_json(a)}, {"ray", io::to_json(r)}};
      }
    }
    identity_failure = identity_failure || t.failures > 0;
    j["halfline"] = tally_json(t);
  }

  // Parallelogram identity over pairs of distinct rays.
  {
    IdentityTally t;
    if (rays.size() >= 2) {
      for (std::size_t i = 0; i < configs; ++i) {
        const Vec x = a + random_cone_element(cone, rng);
        const std::size_t p = rng.below(rays.size());
        std::size_t q = rng.below(rays.size() - 1);
        if (q >= p) ++q;
        const Vec r = rng.rational(1, 3, 4) * rays[p];
        const Vec s = rng.rational(1, 3, 4) * rays[q];
        ++t.tested;
        if (!check_parallelogram(spec, x, r, s)) {
          ++t.failures;
          if (t.witness.is_null()) t.witness = Json{{"x", io::to_json(x)}, {"r", io::to_json(r)}, {"s", io::to_json(s)}};
        }
      }
    }
    identity_failure = identity_failure || t.failures > 0;
    j["parallelogram"] = tally_json(t);
  }

  // Additivity over signed extreme vectors on distinct rays.
  {
    IdentityTally t;
    if (!rays.empty()) {
      for (std::size_t i = 0; i < configs; ++i) {
        const Vec x = a + random_cone_element(cone, rng);
        std::vector<Vec> s_list;
        Vec total = x;
        for (const auto& r : rays) {
          if (!rng.coin()) continue;
          Vec s = rng.rational(1, 2, 4) * r;
          if (rng.coin() && leq(cone, a, x - s) && leq(cone, a, total - s)) s = -s;
          total += s;
          s_list.push_back(std::move(s));
        }
        if (s_list.empty()) continue;
        ++t.tested;
        if (!check_additivity(spec, x, s_list)) {
          ++t.failures;
          if (t.witness.is_null()) t.witness = Json{{"x", io::to_json(x)}, {"s", io::to_json(s_list)}};
        }
      }
    }
    identity_failure = identity_failure || t.failures > 0;
    j["additivity"] = tally_json(t);
  }

  // g_r tables; independence of the basepoint is expected on engaged rays.
  {
    Json tables = Json::array();
    const std::vector<Rational> lambdas{Rational(1, 2), Rational(2), Rational(3)};
    for (std::size_t k = 0; k < rays.size(); ++k) {
      std::vector<Vec> bases{a};
      for (int b = 0; b < 2; ++b) bases.push_back(a + random_cone_element(cone, rng));
      const auto rows = extract_g_r(spec, rays[k], bases, lambdas);
      bool independent = true;
      Json g_by_lambda = Json::array();
      for (std::size_t l = 0; l < lambdas.size(); ++l) {
        const Rational& g0 = rows[l].g;
        for (std::size_t b = 1; b < bases.size(); ++b) independent = independent && rows[b * lambdas.size() + l].g == g0;
        g_by_lambda.push_back(Json{{"lambda", lambdas[l].str()}, {"g", g0.str()}});
      }
      tables.push_back(Json{{"ray", io::to_json(rays[k])},
                            {"engaged", static_cast<bool>(engaged[k])},
                            {"basepoint_independent", independent},
                            {"g", std::move(g_by_lambda)}});
      if (engaged[k] && !independent) identity_failure = true;
    }
    j["g_r"] = std::move(tables);
  }

  // Affinity on the domain, and separately on the engaged span.
  const Rational tol = cfg.tol.empty() ? default_affine_tolerance(spec) : Rational::parse(cfg.tol);
  bool affine = false;
  {
    std::vector<Vec> pts;
    for (std::size_t i = 0; i < configs + cone.dim() + 2; ++i) pts.push_back(a + random_cone_element(cone, rng));
    Json aj;
    try {
      const auto v = check_affine_on(spec, pts, tol);
      affine = v.affine;
      aj = Json{{"affine", v.affine},
                {"max_residual", v.max_residual.str()},
                {"hull_dim", v.hull_dim},
                {"points", pts.size()},
                {"worst_point", io::to_json(pts[v.worst_point])}};
    } catch (const ConeError& e) {
      if (e.kind() != ErrorKind::DegenerateSpan) throw;
      // The domain is a single point (trivial cone).
      affine = true;
      aj = Json{{"affine", true}, {"degenerate", true}};
    }
    aj["tolerance"] = tol.str();
    j["affine_on_domain"] = std::move(aj);
  }
  if (cone.pointed()) {
    const auto pts = sample_engaged_span(cone, a, configs + cone.dim() + 2, cfg.seed);
    try {
      const auto v = check_affine_on(spec, pts, tol);
      j["affine_on_engaged_span"] =
          Json{{"affine", v.affine}, {"max_residual", v.max_residual.str()}, {"hull_dim", v.hull_dim}};
    } catch (const ConeError& e) {
      if (e.kind() != ErrorKind::DegenerateSpan) throw;
      j["affine_on_engaged_span"] = Json{{"degenerate", true}};
    }
  }

  if (a.is_zero() && spec.target_base().is_zero()) {
    std::vector<Vec> us;
    for (std::size_t i = 0; i < std::min<std::size_t>(configs, 50); ++i) us.push_back(random_cone_element(cone, rng));
    const std::vector<Rational> scalars{Rational(0), Rational(1, 2), Rational(2), Rational(3)};
    const auto hv = check_positively_homogeneous(spec, us, scalars);
    Json hj{{"holds", hv.holds}};
    if (hv.u) hj["u"] = io::to_json(*hv.u);
    if (hv.lambda) hj["lambda"] = hv.lambda->str();
    j["homogeneity"] = std::move(hj);
  }

  if (identity_failure) return json_outcome(j, kViolation, "order-isomorphism identities violated");
  j["affine"] = affine;
  return json_outcome(j, affine ? kOk : kNegative,
                      std::string("battery passed (") + std::to_string(battery.samples_run) + " samples), map is " +
                          (affine ? "affine" : "not affine"));
}

// ---- psd ----

Outcome cmd_psd_witness(const Config& cfg, std::size_t n, const std::string& x_arg) {
  const auto x = io::unit_from_arg(x_arg, n);
  const auto w = psd::engagement_witness(x);
  Json j = header("psd witness", cfg);
  j["x"] = io::to_json(x);
  j["y"] = io::to_json(w.y);
  j["z"] = io::to_json(w.z);
  j["w"] = io::to_json(w.w);
  j["residual"] = w.residual;
  std::ostringstream s;
  s << "P_x = P_y + P_z - P_w, residual " << std::setprecision(3) << w.residual;
  return json_outcome(j, kOk, s.str());
}

Outcome cmd_psd_supcheck(const Config& cfg, std::size_t n, const std::string& b_arg) {
  const auto b = io::matrix_from_arg(b_arg, n);
  const auto r = psd::identity_sup_check(b, cfg.samples, cfg.seed, psd_tolerance(cfg), cfg.exec());
  Json j = header("psd supcheck", cfg);
  j["b"] = io::to_json(b);
  const char* verdict = r.verdict == psd::SupCheck::Verdict::Consistent     ? "consistent"
                        : r.verdict == psd::SupCheck::Verdict::NotUpperBound ? "not_upper_bound"
                                                                             : "inconsistent";
  j["verdict"] = verdict;
  j["lambda_min"] = r.lambda_min;
  j["samples_run"] = r.samples;
  j["failures"] = r.failures;
  j["witness"] = r.witness ? io::to_json(*r.witness) : Json(nullptr);
  j["witness_value"] = r.witness ? Json(r.witness_value) : Json(nullptr);
  const int code = r.verdict == psd::SupCheck::Verdict::Consistent     ? kOk
                   : r.verdict == psd::SupCheck::Verdict::NotUpperBound ? kNegative
                                                                        : kViolation;
  return json_outcome(j, code, std::string("verdict ") + verdict + ", " + std::to_string(r.failures) + " failing samples");
}

Outcome cmd_psd_conj(const Config& cfg, std::size_t n, const std::string& a_arg, const std::string& q_arg) {
  const auto a = io::matrix_from_arg(a_arg, n);
  const auto q = io::matrix_from_arg(q_arg, a.n());
  const auto t = psd::ConjugationMap::make(a, psd_tolerance(cfg));
  const auto image = t.apply(q);
  Json j = header("psd conj", cfg);
  j["a"] = io::to_json(a);
  j["q"] = io::to_json(q);
  j["image"] = io::to_json(image);
  std::ostringstream s;
  s << "image diagonal";
  for (std::size_t i = 0; i < image.n(); ++i) s << ' ' << std::setprecision(6) << image(i, i);
  return json_outcome(j, kOk, s.str());
}

Outcome cmd_psd_approx(const Config& cfg, std::size_t n, const std::string& a_arg, std::size_t k_max) {
  const auto a = io::matrix_from_arg(a_arg, n);
  const auto rows = psd::infsup_approx(a, k_max, cfg.seed, psd_tolerance(cfg));
  std::ostringstream csv;
  csv << "k,d_k,e_k\n" << std::setprecision(17);
  for (const auto& r : rows) csv << r.k << ',' << r.d << ',' << r.e << '\n';
  std::ostringstream s;
  s << rows.size() << " rows, final d " << std::setprecision(3) << (rows.empty() ? 0.0 : rows.back().d);
  return {csv.str(), kOk, s.str()};
}

void write_report(const Config& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out_path, std::ios::binary);
  if (!f) fail(ErrorKind::InvalidArgument, "cannot write '" + cfg.out_path + "'");
  f << text;
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPointed: return kNotPointed;
    case ErrorKind::UndefinedLattice: return kUndefinedLattice;
    case ErrorKind::NotPositiveDefinite: return kNotPositiveDefinite;
    case ErrorKind::InternalInconsistency: return kInternal;
    default: return kBadInput;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Exact order structure of polyhedral cones and order-isomorphism checks", "conelab"};
  app.require_subcommand(1);
  app.add_option("--seed", cfg.seed, "Random seed (default 0)");
  app.add_option("--samples", cfg.samples, "Sample count for batteries (default 10000)");
  app.add_option("--tol", cfg.tol, "Tolerance override: affinity residual or PSD comparison slack");
  app.add_option("--out", cfg.out_path, "Write the report to this file instead of stdout");
  app.add_flag("--parallel", cfg.parallel, "Run sampling loops on OpenMP threads (same results)");
  app.add_flag("--summary", cfg.summary, "Print a one-line human-readable summary to stderr");

  std::string cone_path, second_path, u_arg, x_arg, b_arg, a_arg, q_arg;
  std::size_t n = 0;
  std::size_t k_max = 10;

  auto* ext = app.add_subcommand("extreme-rays", "Normalized extreme generators and facets");
  ext->add_option("cone", cone_path, "Cone file")->required();
  auto* cls = app.add_subcommand("classify", "Engaged/disengaged classification with certificates");
  cls->add_option("cone", cone_path, "Cone file")->required();
  auto* hyp = app.add_subcommand("hypothesis", "Inf-sup hull hypothesis verdict");
  hyp->add_option("cone", cone_path, "Cone file")->required();
  auto* iso = app.add_subcommand("check-iso", "Full order-isomorphism battery and affinity verdict");
  iso->add_option("cone", cone_path, "Source cone file")->required();
  iso->add_option("iso", second_path, "Iso spec file")->required();
  auto* sup = app.add_subcommand("supremum", "Least upper bound of a finite set");
  sup->add_option("cone", cone_path, "Cone file")->required();
  sup->add_option("points", second_path, "Points file")->required();
  auto* inf = app.add_subcommand("infimum", "Greatest lower bound of a finite set");
  inf->add_option("cone", cone_path, "Cone file")->required();
  inf->add_option("points", second_path, "Points file")->required();
  auto* ev = app.add_subcommand("evalexpr", "Evaluate an inf-sup expression");
  ev->add_option("cone", cone_path, "Cone file")->required();
  ev->add_option("expr", second_path, "Expression file")->required();
  auto* un = app.add_subcommand("unitnorm", "Order-unit norm of x");
  un->add_option("cone", cone_path, "Cone file")->required();
  un->add_option("--u", u_arg, "Order unit, comma-separated rationals")->required();
  un->add_option("--x", x_arg, "Vector, comma-separated rationals")->required();

  auto* psd_cmd = app.add_subcommand("psd", "Positive semidefinite cone demonstrations");
  psd_cmd->require_subcommand(1);
  auto* pw = psd_cmd->add_subcommand("witness", "P_x = P_y + P_z - P_w for a unit vector x");
  pw->add_option("--n", n, "Matrix size")->required();
  pw->add_option("--x", x_arg, "e<k> or comma-separated coordinates")->required();
  auto* ps = psd_cmd->add_subcommand("supcheck", "Sampled test that B bounds every rank-one projection");
  ps->add_option("--n", n, "Matrix size");
  ps->add_option("--b", b_arg, "Matrix: diag:..., proj:..., id:n or a matrix file")->required();
  auto* pc = psd_cmd->add_subcommand("conj", "Q -> A^1/2 Q A^1/2");
  pc->add_option("--n", n, "Matrix size");
  pc->add_option("--a", a_arg, "Positive definite matrix")->required();
  pc->add_option("--q", q_arg, "Matrix to map")->required();
  auto* pa = psd_cmd->add_subcommand("approx", "Convergence table of the inf-sup approximation (CSV)");
  pa->add_option("--n", n, "Matrix size");
  pa->add_option("--a", a_arg, "Positive semidefinite matrix")->required();
  pa->add_option("--k", k_max, "Number of directions (default 10)");

  for (auto* sc : {ext, cls, hyp, iso, sup, inf, ev, un, psd_cmd, pw, ps, pc, pa}) sc->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }

  std::string command;
  try {
    Outcome o;
    if (ext->parsed()) {
      command = "extreme-rays";
      o = cmd_extreme_rays(cfg, cone_path);
    } else if (cls->parsed()) {
      command = "classify";
      o = cmd_classify(cfg, cone_path);
    } else if (hyp->parsed()) {
      command = "hypothesis";
      o = cmd_hypothesis(cfg, cone_path);
    } else if (iso->parsed()) {
      command = "check-iso";
      o = cmd_check_iso(cfg, cone_path, second_path);
    } else if (sup->parsed() || inf->parsed()) {
      command = sup->parsed() ? "supremum" : "infimum";
      o = cmd_supremum(cfg, cone_path, second_path, sup->parsed());
    } else if (ev->parsed()) {
      command = "evalexpr";
      o = cmd_evalexpr(cfg, cone_path, second_path);
    } else if (un->parsed()) {
      command = "unitnorm";
      o = cmd_unitnorm(cfg, cone_path, u_arg, x_arg);
    } else if (pw->parsed()) {
      command = "psd witness";
      o = cmd_psd_witness(cfg, n, x_arg);
    } else if (ps->parsed()) {
      command = "psd supcheck";
      o = cmd_psd_supcheck(cfg, n, b_arg);
    } else if (pc->parsed()) {
      command = "psd conj";
      o = cmd_psd_conj(cfg, n, a_arg, q_arg);
    } else {
      command = "psd approx";
      o = cmd_psd_approx(cfg, n, a_arg, k_max);
    }
    write_report(cfg, o.text, out);
    if (cfg.summary) err << command << ": " << o.summary << '\n';
    return o.code;
  } catch (const ConeError& e) {
    const int code = exit_code_for(e.kind());
    Json j = header(command, cfg);
    j["error"] = Json{{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    try {
      write_report(cfg, j.dump(2) + "\n", out);
    } catch (const ConeError&) {
      out << j.dump(2) << '\n';
    }
    err << "error: " << e.what() << '\n';
    return code;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace conelab::cli
