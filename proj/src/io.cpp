#include "conelab/io.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

#include "conelab/errors.hpp"

namespace conelab::io {
namespace {

[[noreturn]] void parse_fail(const std::string& what) { fail(ErrorKind::ParseError, what); }

void require_object(const Json& j, std::string_view what) {
  if (!j.is_object()) parse_fail(std::string(what) + " must be a JSON object");
}

void only_fields(const Json& j, std::initializer_list<std::string_view> allowed, std::string_view what) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) parse_fail("unknown field '" + key + "' in " + std::string(what));
  }
}

const Json& field(const Json& j, const char* key, std::string_view what) {
  const auto it = j.find(key);
  if (it == j.end()) parse_fail("missing field '" + std::string(key) + "' in " + std::string(what));
  return *it;
}

std::size_t size_from_json(const Json& j, std::string_view what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) parse_fail(std::string(what) + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

void check_dim(const Vec& v, std::size_t dim, std::string_view what) {
  if (v.size() != dim) {
    fail(ErrorKind::DimensionMismatch, std::string(what) + " has length " + std::to_string(v.size()) + ", expected " +
                                           std::to_string(dim));
  }
}

double double_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return rational_from_json(j).to_double();
  parse_fail("expected a number");
}

Matrix exact_matrix_from_json(const Json& j, std::size_t dim) {
  const auto rows = vecs_from_json(j);
  if (rows.size() != dim) parse_fail("matrix must have " + std::to_string(dim) + " rows");
  for (const auto& r : rows) check_dim(r, dim, "matrix row");
  return Matrix::from_rows(rows, dim);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

double parse_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) parse_fail("malformed number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    // Fractions such as 1/3 are accepted too.
    return Rational::parse(s).to_double();
  }
}

psd::Vector vector_from_arg(const std::string& arg, std::size_t n) {
  if (arg.size() >= 2 && arg[0] == 'e' && arg.find(',') == std::string::npos) {
    std::size_t k = 0;
    try {
      k = std::stoul(arg.substr(1));
    } catch (const std::logic_error&) {
      parse_fail("malformed unit vector '" + arg + "'");
    }
    if (k < 1 || k > n) parse_fail("unit vector index out of range in '" + arg + "'");
    psd::Vector v(n, 0.0);
    v[k - 1] = 1.0;
    return v;
  }
  psd::Vector v;
  for (const auto& part : split_commas(arg)) v.push_back(parse_double(part));
  if (n != 0 && v.size() != n) {
    fail(ErrorKind::DimensionMismatch, "vector '" + arg + "' does not have length " + std::to_string(n));
  }
  return v;
}

Json optional_vec(const std::optional<Vec>& v) { return v ? to_json(*v) : Json(nullptr); }

const char* iso_kind_name(IsoSpec::Kind k) {
  switch (k) {
    case IsoSpec::Kind::Linear: return "linear";
    case IsoSpec::Kind::Affine: return "affine";
    case IsoSpec::Kind::Diagonal: return "diagonal";
    case IsoSpec::Kind::ProductLift: return "product_lift";
    case IsoSpec::Kind::Compose: return "compose";
  }
  return "unknown";
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    parse_fail(e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
      return Rational::parse(std::to_string(j.get<std::uint64_t>()));
    }
    return Rational(j.get<std::int64_t>());
  }
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  parse_fail("rationals must be integers or strings such as \"p/q\", got " + j.dump());
}

Vec vec_from_json(const Json& j) {
  if (!j.is_array()) parse_fail("vector must be an array, got " + j.dump());
  Vec v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

std::vector<Vec> vecs_from_json(const Json& j) {
  if (!j.is_array()) parse_fail("expected an array of vectors");
  std::vector<Vec> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(vec_from_json(x));
  return out;
}

Json to_json(const Rational& q) { return q.str(); }

Json to_json(const Vec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

Json to_json(const std::vector<Vec>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

PolyhedralCone cone_from_json(const Json& j) {
  require_object(j, "cone");
  only_fields(j, {"dim", "generators", "facets"}, "cone");
  const std::size_t dim = size_from_json(field(j, "dim", "cone"), "dim");
  if (dim == 0) parse_fail("cone dimension must be positive");
  const bool has_g = j.contains("generators");
  const bool has_f = j.contains("facets");
  if (has_g == has_f) parse_fail("cone needs exactly one of 'generators' and 'facets'");
  const auto vs = vecs_from_json(has_g ? j["generators"] : j["facets"]);
  for (const auto& v : vs) check_dim(v, dim, has_g ? "generator" : "facet");
  return has_g ? PolyhedralCone::from_generators(dim, vs) : PolyhedralCone::from_facets(dim, vs);
}

Json to_json(const PolyhedralCone& cone) {
  Json j;
  j["dim"] = cone.dim();
  j["generators"] = to_json(cone.generators());
  j["facets"] = to_json(cone.facets());
  j["lineality"] = to_json(cone.lineality());
  j["pointed"] = cone.pointed();
  j["generating"] = cone.generating();
  return j;
}

InfSupExpr expr_from_json(const Json& j) {
  require_object(j, "expression");
  if (j.size() != 1) parse_fail("expression node needs exactly one of 'sup', 'inf', 'leaf'");
  const auto& [key, value] = *j.items().begin();
  if (key == "leaf") return InfSupExpr::leaf(vec_from_json(value));
  if (key != "sup" && key != "inf") parse_fail("unknown field '" + key + "' in expression");
  if (!value.is_array()) parse_fail("'" + key + "' takes an array of expressions");
  std::vector<InfSupExpr> children;
  for (const auto& c : value) children.push_back(expr_from_json(c));
  return key == "sup" ? InfSupExpr::sup(std::move(children)) : InfSupExpr::inf(std::move(children));
}

Json to_json(const InfSupExpr& e) {
  Json j;
  if (e.kind() == InfSupExpr::Kind::Leaf) {
    j["leaf"] = to_json(e.value());
    return j;
  }
  Json kids = Json::array();
  for (const auto& c : e.children()) kids.push_back(to_json(c));
  j[e.kind() == InfSupExpr::Kind::Sup ? "sup" : "inf"] = std::move(kids);
  return j;
}

MonotoneBijection map_from_json(const Json& j) {
  require_object(j, "map");
  const auto kind = field(j, "kind", "map");
  if (!kind.is_string()) parse_fail("map kind must be a string");
  const auto k = kind.get<std::string>();
  if (k == "identity") {
    only_fields(j, {"kind"}, "identity map");
    return MonotoneBijection::identity();
  }
  if (k == "affine") {
    only_fields(j, {"kind", "slope", "intercept"}, "affine map");
    const Rational b = j.contains("intercept") ? rational_from_json(j["intercept"]) : Rational(0);
    return MonotoneBijection::affine(rational_from_json(field(j, "slope", "affine map")), b);
  }
  if (k == "piecewise") {
    only_fields(j, {"kind", "breakpoints"}, "piecewise map");
    const auto pts = vecs_from_json(field(j, "breakpoints", "piecewise map"));
    std::vector<std::pair<Rational, Rational>> bp;
    for (const auto& p : pts) {
      if (p.size() != 2) parse_fail("breakpoints are [t, g(t)] pairs");
      bp.emplace_back(p[0], p[1]);
    }
    return MonotoneBijection::piecewise(std::move(bp));
  }
  if (k == "odd_power") {
    only_fields(j, {"kind", "exponent"}, "odd_power map");
    const auto e = size_from_json(field(j, "exponent", "odd_power map"), "exponent");
    return MonotoneBijection::odd_power(static_cast<unsigned>(e));
  }
  parse_fail("unknown map kind '" + k + "'");
}

Json to_json(const MonotoneBijection& g) {
  Json j;
  switch (g.kind()) {
    case MonotoneBijection::Kind::Affine:
      j["kind"] = "affine";
      j["slope"] = g.slope().str();
      j["intercept"] = g.intercept().str();
      break;
    case MonotoneBijection::Kind::PiecewiseLinear: {
      j["kind"] = "piecewise";
      Json a = Json::array();
      for (const auto& [t, s] : g.breakpoints()) a.push_back(Json::array({t.str(), s.str()}));
      j["breakpoints"] = std::move(a);
      break;
    }
    case MonotoneBijection::Kind::OddPower:
      j["kind"] = "odd_power";
      j["exponent"] = g.exponent();
      break;
  }
  return j;
}

IsoSpec iso_from_json(const Json& j, const PolyhedralCone& source) {
  require_object(j, "iso spec");
  const auto kind = field(j, "kind", "iso spec");
  if (!kind.is_string()) parse_fail("iso kind must be a string");
  const auto k = kind.get<std::string>();
  const std::size_t d = source.dim();

  if (k == "identity") {
    only_fields(j, {"kind"}, "identity spec");
    return make_identity(source);
  }
  if (k == "linear") {
    only_fields(j, {"kind", "matrix", "target", "unchecked"}, "linear spec");
    const Matrix m = exact_matrix_from_json(field(j, "matrix", "linear spec"), d);
    PolyhedralCone target = source;
    if (j.contains("target")) {
      target = cone_from_json(j["target"]);
      if (target.dim() != d) fail(ErrorKind::DimensionMismatch, "linear target dimension differs from the source");
    }
    const bool unchecked = j.contains("unchecked") && j["unchecked"].is_boolean() && j["unchecked"].get<bool>();
    return unchecked ? make_linear_iso_unchecked(m, source, target) : make_linear_iso(m, source, target);
  }
  if (k == "affine") {
    only_fields(j, {"kind", "inner", "source_base", "target_base"}, "affine spec");
    const IsoSpec inner = iso_from_json(field(j, "inner", "affine spec"), source);
    const Vec a = vec_from_json(field(j, "source_base", "affine spec"));
    const Vec b = vec_from_json(field(j, "target_base", "affine spec"));
    check_dim(a, d, "source_base");
    check_dim(b, inner.target().dim(), "target_base");
    return make_affine_iso(inner, a, b);
  }
  if (k == "diagonal") {
    only_fields(j, {"kind", "target_frame", "maps", "unchecked", "basis", "target"}, "diagonal spec");
    const auto frame = vecs_from_json(field(j, "target_frame", "diagonal spec"));
    for (const auto& w : frame) check_dim(w, d, "target frame vector");
    const auto& mj = field(j, "maps", "diagonal spec");
    if (!mj.is_array()) parse_fail("'maps' must be an array");
    std::vector<MonotoneBijection> maps;
    for (const auto& m : mj) maps.push_back(map_from_json(m));
    const bool unchecked = j.contains("unchecked") && j["unchecked"].is_boolean() && j["unchecked"].get<bool>();
    if (!unchecked) {
      if (j.contains("basis") || j.contains("target")) parse_fail("'basis' and 'target' need \"unchecked\": true");
      return make_diagonal_iso(source, frame, maps);
    }
    const auto basis = vecs_from_json(field(j, "basis", "diagonal spec"));
    for (const auto& v : basis) check_dim(v, d, "basis vector");
    const PolyhedralCone target = j.contains("target") ? cone_from_json(j["target"]) : source;
    return make_diagonal_iso_unchecked(source, basis, frame, maps, target);
  }
  if (k == "product_lift") {
    only_fields(j, {"kind", "ray_index", "ray", "ray_map", "sub"}, "product_lift spec");
    if (j.contains("ray_index") == j.contains("ray")) parse_fail("product_lift needs exactly one of 'ray_index' and 'ray'");
    std::size_t idx = 0;
    if (j.contains("ray_index")) {
      idx = size_from_json(j["ray_index"], "ray_index");
    } else {
      const Vec r = vec_from_json(j["ray"]);
      check_dim(r, d, "ray");
      const auto found = source.ray_index(r);
      if (!found) fail(ErrorKind::NotExtreme, "ray " + to_string(r) + " is not an extreme ray of the cone");
      idx = *found;
    }
    const auto split = disengaged_split(source, idx);
    const MonotoneBijection g = map_from_json(field(j, "ray_map", "product_lift spec"));
    const IsoSpec sub = iso_from_json(field(j, "sub", "product_lift spec"), split.subcone);
    return make_product_lift(source, idx, g, sub);
  }
  if (k == "compose") {
    only_fields(j, {"kind", "specs"}, "compose spec");
    const auto& sj = field(j, "specs", "compose spec");
    if (!sj.is_array() || sj.empty()) parse_fail("'specs' must be a nonempty array");
    std::vector<IsoSpec> parts;
    const PolyhedralCone* cur = &source;
    for (const auto& s : sj) {
      parts.push_back(iso_from_json(s, *cur));
      cur = &parts.back().target();
    }
    return make_compose(parts);
  }
  parse_fail("unknown iso kind '" + k + "'");
}

std::vector<Vec> points_from_json(const Json& j) {
  if (j.is_array()) return vecs_from_json(j);
  require_object(j, "points file");
  only_fields(j, {"points"}, "points file");
  return vecs_from_json(field(j, "points", "points file"));
}

psd::SymMatrix matrix_from_json(const Json& j) {
  require_object(j, "matrix");
  only_fields(j, {"n", "rows"}, "matrix");
  const std::size_t n = size_from_json(field(j, "n", "matrix"), "n");
  const auto& rj = field(j, "rows", "matrix");
  if (!rj.is_array() || rj.size() != n) parse_fail("matrix needs n rows");
  std::vector<psd::Vector> rows;
  for (const auto& r : rj) {
    if (!r.is_array() || r.size() != n) parse_fail("matrix rows need n entries");
    psd::Vector row;
    for (const auto& x : r) row.push_back(double_from_json(x));
    rows.push_back(std::move(row));
  }
  return psd::SymMatrix::from_rows(rows);
}

psd::SymMatrix matrix_from_arg(const std::string& arg, std::size_t n_hint) {
  if (arg.rfind("diag:", 0) == 0) {
    psd::Vector d;
    for (const auto& part : split_commas(arg.substr(5))) d.push_back(parse_double(part));
    if (n_hint != 0 && d.size() != n_hint) fail(ErrorKind::DimensionMismatch, "'" + arg + "' does not match n");
    return psd::SymMatrix::diagonal(d);
  }
  if (arg.rfind("proj:", 0) == 0) {
    const std::string rest = arg.substr(5);
    std::size_t n = n_hint;
    if (n == 0 && !(rest.size() >= 2 && rest[0] == 'e')) n = split_commas(rest).size();
    if (n == 0) parse_fail("'" + arg + "' needs --n");
    return psd::rank_one_projection(unit_from_arg(rest, n));
  }
  if (arg.rfind("id:", 0) == 0) {
    std::size_t n = 0;
    try {
      n = std::stoul(arg.substr(3));
    } catch (const std::logic_error&) {
      parse_fail("malformed '" + arg + "'");
    }
    return psd::SymMatrix::identity(n);
  }
  const auto m = matrix_from_json(read_json_file(arg));
  if (n_hint != 0 && m.n() != n_hint) fail(ErrorKind::DimensionMismatch, "matrix file does not match n");
  return m;
}

psd::Vector unit_from_arg(const std::string& arg, std::size_t n) {
  auto v = vector_from_arg(arg, n);
  double s = 0.0;
  for (double x : v) s += x * x;
  if (!(s > 0.0)) fail(ErrorKind::NotUnit, "zero vector '" + arg + "'");
  const double norm = std::sqrt(s);
  for (double& x : v) x /= norm;
  return v;
}

Json to_json(const psd::SymMatrix& m) {
  Json j;
  j["n"] = m.n();
  Json rows = Json::array();
  for (const auto& r : m.rows()) rows.push_back(r);
  j["rows"] = std::move(rows);
  return j;
}

Json to_json(const psd::Vector& v) { return Json(v); }

Json to_json(const SupResult& r) {
  Json j;
  switch (r.outcome) {
    case SupResult::Outcome::Exists:
      j["outcome"] = "exists";
      j["value"] = to_json(r.value);
      break;
    case SupResult::Outcome::NoUpperBound:
      j["outcome"] = "no_upper_bound";
      break;
    case SupResult::Outcome::NoLeastUpperBound:
      j["outcome"] = "no_least_upper_bound";
      j["witnesses"] = to_json(r.witnesses);
      break;
  }
  return j;
}

Json to_json(const ExtremeRayReport& r) {
  Json j;
  j["ray_index"] = r.ray_index;
  j["generator"] = to_json(r.generator);
  j["engaged"] = r.engaged;
  j["span_coefficients"] = optional_vec(r.span_coefficients);
  j["separating_functional"] = optional_vec(r.separating_functional);
  return j;
}

Json to_json(const HypothesisVerdict& v) {
  Json j;
  j["directed"] = v.directed;
  j["pointed"] = v.pointed;
  j["all_extreme_rays_engaged"] = v.all_extreme_rays_engaged;
  j["holds"] = v.holds;
  j["disengaged_witness"] = v.disengaged_witness ? Json(*v.disengaged_witness) : Json(nullptr);
  return j;
}

Json to_json(const IsoReport& r) {
  Json j;
  j["verdict"] = r.verdict == IsoReport::Verdict::PassedSampling ? "passed_sampling" : "violation";
  j["samples_run"] = r.samples_run;
  j["preservation_failures"] = r.preservation_failures;
  j["inverse_failures"] = r.inverse_failures;
  j["approximate_inverses"] = r.approximate_inverses;
  const auto pairs = [](const std::vector<PairWitness>& ws) {
    Json a = Json::array();
    for (const auto& w : ws) {
      Json p;
      p["x"] = to_json(w.x);
      p["y"] = to_json(w.y);
      a.push_back(std::move(p));
    }
    return a;
  };
  j["order_preserving_violations"] = pairs(r.order_preserving_violations);
  j["inverse_violations"] = pairs(r.inverse_violations);
  return j;
}

Json iso_summary(const IsoSpec& spec) {
  Json j;
  j["kind"] = iso_kind_name(spec.kind());
  j["description"] = spec.describe();
  j["certified"] = spec.certified();
  j["exact"] = spec.exact();
  j["affine_by_construction"] = spec.affine_by_construction();
  return j;
}

}  // namespace conelab::io
