#include <doctest.h>

#include <functional>

#include "conelab/errors.hpp"
#include "conelab/io.hpp"

using namespace conelab;
using io::Json;

namespace {
ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ConeError& e) {
    return e.kind();
  }
  FAIL("expected a ConeError");
  return ErrorKind::InternalInconsistency;
}
Json js(const char* text) { return io::parse_json(text); }
}  // namespace

TEST_CASE("rationals and vectors") {
  CHECK(io::rational_from_json(js("\"3/6\"")) == Rational(1, 2));
  CHECK(io::rational_from_json(js("-4")) == Rational(-4));
  CHECK(io::rational_from_json(js("18446744073709551615")).str() == "18446744073709551615");
  CHECK(kind_of([] { io::rational_from_json(js("0.5")); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { io::rational_from_json(js("true")); }) == ErrorKind::ParseError);
  CHECK(io::to_json(Vec{Rational(1, 2), Rational(-3)}).dump() == R"(["1/2","-3"])");
  CHECK(kind_of([] { io::parse_json("{"); }) == ErrorKind::ParseError);
}

TEST_CASE("cone files") {
  const auto c = io::cone_from_json(js(R"({"dim": 3, "generators": [[1,1,1],[1,-1,1],[-1,1,1],[-1,-1,"1"]]})"));
  CHECK(c == cones::square());
  const auto f = io::cone_from_json(js(R"({"dim": 3, "facets": [[1,0,1],[-1,0,1],[0,1,1],[0,-1,1]]})"));
  CHECK(f == c);
  const Json out = io::to_json(c);
  CHECK(out["generators"].dump() == R"([["1","1","1"],["1","-1","1"],["-1","1","1"],["-1","-1","1"]])");
  CHECK(out["pointed"] == true);
  CHECK(kind_of([] { io::cone_from_json(js(R"({"dim": 2, "generators": [], "extra": 1})")); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { io::cone_from_json(js(R"({"dim": 2, "generators": [], "facets": []})")); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { io::cone_from_json(js(R"({"generators": []})")); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { io::cone_from_json(js(R"({"dim": 2, "generators": [[1,0,0]]})")); }) == ErrorKind::DimensionMismatch);
  CHECK(kind_of([] { io::cone_from_json(js(R"([1,2])")); }) == ErrorKind::ParseError);
}

TEST_CASE("expression files roundtrip") {
  const auto e = io::expr_from_json(js(R"({"sup": [{"leaf": [1, "1/2"]}, {"inf": [{"leaf": [0, 0]}, {"leaf": [2, 2]}]}]})"));
  CHECK(e.kind() == InfSupExpr::Kind::Sup);
  CHECK(io::to_json(e).dump() == R"({"sup":[{"leaf":["1","1/2"]},{"inf":[{"leaf":["0","0"]},{"leaf":["2","2"]}]}]})");
  CHECK(kind_of([] { io::expr_from_json(js(R"({"max": []})")); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { io::expr_from_json(js(R"({"sup": [], "inf": []})")); }) == ErrorKind::ParseError);
}

TEST_CASE("map and iso files") {
  const auto g = io::map_from_json(js(R"({"kind": "piecewise", "breakpoints": [[0,0],[1,2],[3,4]]})"));
  CHECK(g.eval(Rational(2)) == Rational(3));
  CHECK(io::map_from_json(io::to_json(g)) == g);
  CHECK(io::map_from_json(js(R"({"kind": "odd_power", "exponent": 3})")).eval(Rational(2)) == Rational(8));
  CHECK(io::map_from_json(js(R"({"kind": "affine", "slope": "1/2"})")).is_linear());
  CHECK(kind_of([] { io::map_from_json(js(R"({"kind": "affine", "slope": 1, "bias": 0})")); }) == ErrorKind::ParseError);

  const auto sq = cones::square();
  const auto lin = io::iso_from_json(js(R"({"kind": "linear", "matrix": [[0,2,0],[-2,0,0],[0,0,2]]})"), sq);
  CHECK(lin.certified());
  CHECK(kind_of([&] { io::iso_from_json(js(R"({"kind": "linear", "matrix": [[1,0,0],[0,1,0],[0,0,2]]})"), sq); }) ==
        ErrorKind::NotConeMap);
  const auto forged = io::iso_from_json(
      js(R"({"kind": "linear", "matrix": [[1,0,0],[0,1,0],[0,0,2]], "unchecked": true})"), sq);
  CHECK_FALSE(forged.certified());

  const auto tn = cones::two_norm_2d();
  const auto lift = io::iso_from_json(
      js(R"({"kind": "product_lift", "ray": [2, 2], "ray_map": {"kind": "odd_power", "exponent": 3}, "sub": {"kind": "identity"}})"),
      tn);
  CHECK(lift.kind() == IsoSpec::Kind::ProductLift);
  CHECK(lift.split().ray_index == 0);

  const auto comp = io::iso_from_json(
      js(R"({"kind": "compose", "specs": [{"kind": "identity"}, {"kind": "affine", "inner": {"kind": "identity"}, "source_base": [0,0], "target_base": [1,1]}]})"),
      tn);
  CHECK(comp.eval(Vec{Rational(0), Rational(1)}) == Vec{Rational(1), Rational(2)});

  const auto o = cones::orthant(2);
  const auto diag = io::iso_from_json(
      js(R"({"kind": "diagonal", "target_frame": [[1,0],[0,1]], "maps": [{"kind":"odd_power","exponent":3},{"kind":"identity"}]})"), o);
  CHECK(diag.eval(Vec{Rational(2), Rational(2)}) == Vec{Rational(8), Rational(2)});
  CHECK(kind_of([&] { io::iso_from_json(js(R"({"kind": "diagonal", "target_frame": [], "maps": [], "basis": []})"), o); }) ==
        ErrorKind::ParseError);
  CHECK(kind_of([&] { io::iso_from_json(js(R"({"kind": "shear"})"), o); }) == ErrorKind::ParseError);
}

TEST_CASE("points and matrices") {
  CHECK(io::points_from_json(js(R"([[1,2],[3,4]])")).size() == 2);
  CHECK(io::points_from_json(js(R"({"points": [[1,2]]})")).size() == 1);
  CHECK(kind_of([] { io::points_from_json(js(R"({"pts": []})")); }) == ErrorKind::ParseError);

  const auto m = io::matrix_from_json(js(R"({"n": 2, "rows": [[2, 0.5], [0.5, "1/4"]]})"));
  CHECK(m(1, 1) == 0.25);
  CHECK(kind_of([] { io::matrix_from_json(js(R"({"n": 2, "rows": [[1, 0]]})")); }) == ErrorKind::ParseError);
  CHECK(io::matrix_from_arg("diag:4,1", 0)(0, 0) == 4.0);
  CHECK(io::matrix_from_arg("proj:e2", 3)(1, 1) == 1.0);
  CHECK(io::matrix_from_arg("proj:3,4", 0)(0, 1) == doctest::Approx(0.48));
  CHECK(io::matrix_from_arg("id:3", 0).trace() == 3.0);
  CHECK(kind_of([] { io::matrix_from_arg("diag:1,2", 3); }) == ErrorKind::DimensionMismatch);
  CHECK(io::unit_from_arg("e1", 2) == psd::Vector{1, 0});
  CHECK(kind_of([] { io::unit_from_arg("e4", 2); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { io::unit_from_arg("0,0", 2); }) == ErrorKind::NotUnit);
}
