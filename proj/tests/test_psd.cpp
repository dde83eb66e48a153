#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "conelab/errors.hpp"
#include "conelab/psd.hpp"

using namespace conelab;
using namespace conelab::psd;

namespace {

double dotp(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Q diag(values) Q^T with Q a product of two Householder reflections.
SymMatrix known_spectrum(const Vector& values, Rng& rng) {
  const std::size_t n = values.size();
  std::vector<Vector> q(n, Vector(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) q[i][i] = 1.0;
  for (int h = 0; h < 2; ++h) {
    const Vector u = random_unit(n, rng);
    for (auto& row : q) {
      const double c = 2.0 * dotp(row, u);
      for (std::size_t k = 0; k < n; ++k) row[k] -= c * u[k];
    }
  }
  std::vector<Vector> rows(n, Vector(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) rows[i][j] += q[i][k] * values[k] * q[j][k];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) rows[i][j] = rows[j][i];
  }
  return SymMatrix::from_rows(rows);
}

}  // namespace

TEST_CASE("symmetric matrix construction") {
  CHECK_THROWS_AS(SymMatrix::from_rows({{1, 2}, {3, 4}}), ConeError);
  CHECK_THROWS_AS(SymMatrix::identity(1), ConeError);
  CHECK_THROWS_AS(SymMatrix::identity(9), ConeError);
  CHECK_THROWS_AS(SymMatrix::from_rows({{1, 0}, {0, 1, 0}}), ConeError);
  const auto m = SymMatrix::from_rows({{1, 2 + 1e-16}, {2, 4}});
  CHECK(m(0, 1) == m(1, 0));
  CHECK(SymMatrix::diagonal({1, 2, 3}).trace() == 6.0);
}

TEST_CASE("2x2 eigenvalues match the closed form") {
  Rng rng(41);
  for (int t = 0; t < 500; ++t) {
    const double a = rng.normal(), b = rng.normal(), c = rng.normal();
    const auto e = eigen(SymMatrix::from_rows({{a, b}, {b, c}}));
    const double mid = (a + c) / 2, rad = std::sqrt((a - c) * (a - c) / 4 + b * b);
    CHECK(e.values[0] == doctest::Approx(mid - rad).epsilon(1e-12).scale(1.0));
    CHECK(e.values[1] == doctest::Approx(mid + rad).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("eigendecompositions recover planted spectra") {
  Rng rng(42);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 2 + rng.below(7);
    Vector values(n);
    for (auto& v : values) v = rng.normal() * 3;
    const auto a = known_spectrum(values, rng);
    const auto e = eigen(a);
    std::sort(values.begin(), values.end());
    for (std::size_t i = 0; i < n; ++i) CHECK(std::fabs(e.values[i] - values[i]) < 1e-11);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::fabs(dotp(e.vectors[i], e.vectors[i]) - 1.0) < 1e-12);
      const Vector av = a.apply(e.vectors[i]);
      double res = 0.0;
      for (std::size_t k = 0; k < n; ++k) res = std::max(res, std::fabs(av[k] - e.values[i] * e.vectors[i][k]));
      CHECK(res < 1e-11);
    }
    CHECK((from_spectrum(e.vectors, e.values) - a).frobenius() < 1e-11);
    CHECK(e.sweeps <= 50);
  }
}

TEST_CASE("Loewner order") {
  const auto i2 = SymMatrix::identity(2);
  CHECK(psd_leq(SymMatrix::diagonal({0.5, 1}), i2));
  CHECK_FALSE(psd_leq(SymMatrix::diagonal({1.5, 1}), i2));
  CHECK_FALSE(psd_leq(SymMatrix::from_rows({{0, 1}, {1, 0}}), SymMatrix::zero(2)));
  CHECK_THROWS_AS(psd_leq(i2, SymMatrix::identity(3)), ConeError);
  CHECK_THROWS_AS(rank_one_projection({1, 1}), ConeError);
  const auto p = rank_one_projection({0.6, 0.8});
  CHECK(p(0, 1) == doctest::Approx(0.48));
}

TEST_CASE("engagement witness") {
  const auto w = engagement_witness({1, 0, 0});
  CHECK(w.residual <= 1e-10);
  CHECK(w.w == Vector{0, 1, 0});
  Rng rng(43);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 2 + rng.below(7);
    const Vector x = random_unit(n, rng);
    const auto ew = engagement_witness(x);
    CHECK(ew.residual <= 1e-10);
    for (const auto* u : {&ew.y, &ew.z, &ew.w}) {
      CHECK(std::fabs(dotp(*u, *u) - 1.0) < 1e-12);
      CHECK(std::fabs(std::fabs(dotp(*u, x)) - 1.0) > 1e-3);  // distinct rays
    }
  }
  CHECK_THROWS_AS(engagement_witness({1, 1}), ConeError);
  CHECK(engagement_trials(200, 1).max_residual <= 1e-10);
  CHECK(engagement_trials(200, 1, Execution::Serial).max_residual ==
        engagement_trials(200, 1, Execution::Parallel).max_residual);
}

TEST_CASE("identity bounds every rank-one projection") {
  const auto ok = identity_sup_check(SymMatrix::identity(3), 500, 0);
  CHECK(ok.verdict == SupCheck::Verdict::Consistent);
  CHECK(ok.failures == 0);
  const auto big = identity_sup_check(SymMatrix::diagonal({2, 1.5, 3}), 500, 1);
  CHECK(big.verdict == SupCheck::Verdict::Consistent);

  const auto bad = identity_sup_check(SymMatrix::diagonal({1, 0.5}), 500, 0);
  REQUIRE(bad.verdict == SupCheck::Verdict::NotUpperBound);
  REQUIRE(bad.witness.has_value());
  CHECK(std::fabs((*bad.witness)[1]) > 0.99);
  CHECK(bad.witness_value == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(identity_sup_check(SymMatrix::diagonal({1, 0.5}), 500, 0, {}, Execution::Parallel).witness == bad.witness);
}

TEST_CASE("conjugation maps") {
  const auto t = ConjugationMap::make(SymMatrix::diagonal({4, 1}));
  const auto img = t.apply(rank_one_projection({1, 0}));
  CHECK(img(0, 0) == doctest::Approx(4.0));
  CHECK(std::fabs(img(1, 1)) < 1e-15);
  CHECK((t.apply_inverse(img) - rank_one_projection({1, 0})).frobenius() < 1e-14);
  CHECK_THROWS_AS(ConjugationMap::make(SymMatrix::diagonal({1, 0})), ConeError);

  Rng rng(44);
  const auto a = random_psd(4, rng) + SymMatrix::identity(4) * 0.1;
  const auto s = conjugation_battery(a, 2000, 5);
  CHECK(s.failures == 0);
  CHECK(s.comparable >= 1000);
  CHECK(s.min_image_eigenvalue > -1e-9);
  const auto p = conjugation_battery(a, 2000, 5, {}, Execution::Parallel);
  CHECK(p.failures == s.failures);
  CHECK(p.comparable == s.comparable);
  CHECK(p.min_image_eigenvalue == s.min_image_eigenvalue);
}

TEST_CASE("inf-sup approximation tables are nonincreasing") {
  Rng rng(45);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + rng.below(5);
    const auto a = random_psd(n, rng);
    const auto rows = infsup_approx(a, 3 * n, 7);
    REQUIRE(rows.size() == 3 * n);
    for (std::size_t k = 1; k < rows.size(); ++k) {
      CHECK(rows[k].d <= rows[k - 1].d + 1e-9);
      CHECK(rows[k].e <= rows[k - 1].e + 1e-9);
    }
    CHECK(rows[n - 1].e < 1e-9);  // the axes already span everything
  }
  CHECK_THROWS_AS(infsup_approx(SymMatrix::diagonal({1, -1}), 4, 0), ConeError);
}
