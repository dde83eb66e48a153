#include <doctest.h>

#include <functional>

#include "conelab/errors.hpp"
#include "conelab/iso.hpp"
#include "conelab/linalg.hpp"

using namespace conelab;

namespace {

Vec v(std::initializer_list<int> xs) {
  Vec out;
  for (int x : xs) out.push_back(Rational(x));
  return out;
}

Matrix mat(std::initializer_list<std::initializer_list<int>> rows) {
  std::vector<Vec> rs;
  for (const auto& r : rows) rs.push_back(v(r));
  return Matrix::from_rows(rs, rs.front().size());
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ConeError& e) {
    return e.kind();
  }
  FAIL("expected a ConeError");
  return ErrorKind::InternalInconsistency;
}

using BP = std::vector<std::pair<Rational, Rational>>;
const auto kPwl = MonotoneBijection::piecewise(BP{{0, 0}, {1, 2}, {3, 4}});

}  // namespace

TEST_CASE("linear specs") {
  const auto sq = cones::square();
  const auto rot = make_linear_iso(mat({{0, 2, 0}, {-2, 0, 0}, {0, 0, 2}}), sq, sq);
  CHECK(rot.certified());
  CHECK(rot.exact());
  CHECK(rot.affine_by_construction());
  CHECK(rot.eval(v({1, 1, 1})) == v({2, -2, 2}));
  CHECK(rot.invert(v({2, -2, 2})) == v({1, 1, 1}));
  CHECK(rot.describe() == "linear");
  CHECK(make_identity(sq).describe() == "identity");

  CHECK(kind_of([&] { make_linear_iso(mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 2}}), sq, sq); }) == ErrorKind::NotConeMap);
  CHECK(kind_of([&] { make_linear_iso(mat({{1, 1, 0}, {1, 1, 0}, {0, 0, 1}}), sq, sq); }) == ErrorKind::InvalidArgument);
  const auto forged = make_linear_iso_unchecked(mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 2}}), sq, sq);
  CHECK_FALSE(forged.certified());
  CHECK(kind_of([&] { (void)rot.eval(v({1, 0, 0})); }) == ErrorKind::OutOfDomain);
}

TEST_CASE("affine translation") {
  const auto o = cones::orthant(2);
  const auto inner = make_linear_iso(mat({{0, 1}, {1, 0}}), o, o);
  const auto f = make_affine_iso(inner, v({1, 1}), v({-2, 5}));
  CHECK(f.kind() == IsoSpec::Kind::Affine);
  CHECK(f.in_domain(v({1, 3})));
  CHECK_FALSE(f.in_domain(v({0, 3})));
  CHECK(f.eval(v({1, 3})) == v({0, 5}));
  CHECK(f.invert(v({0, 5})) == v({1, 3}));
  CHECK(kind_of([&] { make_affine_iso(f, v({0, 0}), v({0, 0})); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("diagonal specs over simplicial cones") {
  const auto o = cones::orthant(2);
  const auto cube = MonotoneBijection::odd_power(3);
  const auto f = make_diagonal_iso(o, {v({1, 0}), v({0, 1})}, {cube, MonotoneBijection::identity()});
  CHECK(f.eval(v({2, 1})) == v({8, 1}));
  CHECK_FALSE(f.affine_by_construction());
  CHECK_FALSE(f.exact());
  bool exact = true;
  CHECK(f.invert(v({8, 5}), &exact) == v({2, 5}));
  CHECK(exact);
  (void)f.invert(v({2, 5}), &exact);
  CHECK_FALSE(exact);

  CHECK(kind_of([] { make_diagonal_iso(cones::square(), {}, {}); }) == ErrorKind::NotSimplicial);
  CHECK(kind_of([&] { make_diagonal_iso(o, {v({1, 0})}, {cube}); }) == ErrorKind::MapCountMismatch);
  CHECK(kind_of([&] { make_diagonal_iso(o, {v({1, 0}), v({2, 0})}, {cube, cube}); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([&] {
          make_diagonal_iso(o, {v({1, 0}), v({0, 1})}, {MonotoneBijection::affine(Rational(1), Rational(1)), cube});
        }) == ErrorKind::InvalidArgument);
}

TEST_CASE("product lifts over disengaged rays") {
  const auto c = cones::two_norm_2d();
  const auto split = disengaged_split(c, 0);
  const auto f = make_product_lift(c, 0, kPwl, make_identity(split.subcone));
  CHECK(f.kind() == IsoSpec::Kind::ProductLift);
  CHECK(f.target() == c);
  CHECK_FALSE(f.affine_by_construction());
  // 2 (1,1) + 1 (-1,1): the ray coordinate 2 maps to 3.
  CHECK(f.eval(v({1, 3})) == v({2, 4}));
  CHECK(f.invert(v({2, 4})) == v({1, 3}));
  CHECK(kind_of([&] { make_product_lift(cones::square(), 0, kPwl, make_identity(cones::square())); }) ==
        ErrorKind::RayIsEngaged);
  CHECK(kind_of([&] {
          make_product_lift(c, 0, MonotoneBijection::affine(Rational(1), Rational(1)), make_identity(split.subcone));
        }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([&] { make_product_lift(c, 0, kPwl, make_identity(cones::orthant(2))); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("composition applies parts left to right") {
  const auto o = cones::orthant(2);
  const auto swap = make_linear_iso(mat({{0, 1}, {1, 0}}), o, o);
  const auto cube =
      make_diagonal_iso(o, {v({1, 0}), v({0, 1})}, {MonotoneBijection::odd_power(3), MonotoneBijection::identity()});
  const auto f = make_compose({cube, swap});
  CHECK(f.eval(v({2, 3})) == v({3, 8}));
  CHECK(f.invert(v({3, 8})) == v({2, 3}));
  CHECK(f.describe().rfind("compose(", 0) == 0);
  CHECK(kind_of([] { make_compose({}); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([&] { make_compose({swap, make_identity(cones::square())}); }) == ErrorKind::InvalidArgument);
}
