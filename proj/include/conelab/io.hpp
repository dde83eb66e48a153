#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "conelab/battery.hpp"
#include "conelab/cone.hpp"
#include "conelab/infsup.hpp"
#include "conelab/iso.hpp"
#include "conelab/monotone.hpp"
#include "conelab/order.hpp"
#include "conelab/psd.hpp"

namespace conelab::io {

using Json = nlohmann::ordered_json;

/// Parses a JSON document; throws ParseError with the parser message.
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);

/// "p/q" strings, decimal strings or JSON integers.
Rational rational_from_json(const Json& j);
Vec vec_from_json(const Json& j);
std::vector<Vec> vecs_from_json(const Json& j);
Json to_json(const Rational& q);
Json to_json(const Vec& v);
Json to_json(const std::vector<Vec>& vs);

/// {"dim": d, "generators": [...]} or {"dim": d, "facets": [...]}.
PolyhedralCone cone_from_json(const Json& j);
Json to_json(const PolyhedralCone& cone);

/// {"sup": [...]}, {"inf": [...]} or {"leaf": [...]}.
InfSupExpr expr_from_json(const Json& j);
Json to_json(const InfSupExpr& e);

/// {"kind": "affine", "slope", "intercept"}, {"kind": "piecewise",
/// "breakpoints": [[t, g], ...]} or {"kind": "odd_power", "exponent"}.
MonotoneBijection map_from_json(const Json& j);
Json to_json(const MonotoneBijection& g);

/// Iso specs are read relative to their source cone; see README for the kinds.
IsoSpec iso_from_json(const Json& j, const PolyhedralCone& source);

/// {"points": [...]} or a bare array of vectors.
std::vector<Vec> points_from_json(const Json& j);

/// {"n": n, "rows": [[...], ...]}.
psd::SymMatrix matrix_from_json(const Json& j);
/// Argument mini-syntax: "diag:a,b,...", "proj:e<k>" or "proj:x1,x2,...",
/// "id:<n>", otherwise a path to a matrix file.
psd::SymMatrix matrix_from_arg(const std::string& arg, std::size_t n_hint);
/// "e<k>" (1-based) or comma-separated coordinates, normalized to unit length.
psd::Vector unit_from_arg(const std::string& arg, std::size_t n);
Json to_json(const psd::SymMatrix& m);
Json to_json(const psd::Vector& v);

Json to_json(const SupResult& r);
Json to_json(const ExtremeRayReport& r);
Json to_json(const HypothesisVerdict& v);
Json to_json(const IsoReport& r);
/// Kind, description and construction flags of a spec.
Json iso_summary(const IsoSpec& spec);

}  // namespace conelab::io
