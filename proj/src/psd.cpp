#include "conelab/psd.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>

#include "conelab/errors.hpp"

namespace conelab::psd {
namespace {

constexpr std::size_t kMinN = 2;
constexpr std::size_t kMaxN = 8;

void check_n(std::size_t n) {
  if (n < kMinN || n > kMaxN) fail(ErrorKind::InvalidArgument, "matrix size must lie in [2, 8]");
}

double dot(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vector& a) { return std::sqrt(dot(a, a)); }

}  // namespace

SymMatrix SymMatrix::from_rows(const std::vector<Vector>& rows) {
  const std::size_t n = rows.size();
  check_n(n);
  double scale = 1.0;
  for (const auto& r : rows) {
    if (r.size() != n) fail(ErrorKind::DimensionMismatch, "matrix rows must have length n");
    for (double v : r) {
      if (!std::isfinite(v)) fail(ErrorKind::InvalidArgument, "matrix entries must be finite");
      scale = std::max(scale, std::fabs(v));
    }
  }
  SymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (std::fabs(rows[i][j] - rows[j][i]) >= 1e-14 * scale) fail(ErrorKind::InvalidArgument, "matrix is not symmetric");
      m.at(i, j) = 0.5 * (rows[i][j] + rows[j][i]);
    }
  }
  return m;
}

SymMatrix SymMatrix::zero(std::size_t n) {
  check_n(n);
  return SymMatrix(n);
}

SymMatrix SymMatrix::identity(std::size_t n) {
  SymMatrix m = zero(n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

SymMatrix SymMatrix::diagonal(const Vector& d) {
  SymMatrix m = zero(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
  return m;
}

SymMatrix SymMatrix::outer(const Vector& x) {
  SymMatrix m = zero(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) m.at(i, j) = x[i] * x[j];
  }
  return m;
}

SymMatrix SymMatrix::operator+(const SymMatrix& b) const {
  if (b.n_ != n_) fail(ErrorKind::DimensionMismatch, "matrix sizes differ");
  SymMatrix m = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] += b.a_[i];
  return m;
}

SymMatrix SymMatrix::operator-(const SymMatrix& b) const {
  if (b.n_ != n_) fail(ErrorKind::DimensionMismatch, "matrix sizes differ");
  SymMatrix m = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] -= b.a_[i];
  return m;
}

SymMatrix SymMatrix::operator*(double s) const {
  SymMatrix m = *this;
  for (double& v : m.a_) v *= s;
  return m;
}

SymMatrix SymMatrix::congruence(const SymMatrix& b) const {
  if (b.n_ != n_) fail(ErrorKind::DimensionMismatch, "matrix sizes differ");
  std::vector<double> t(n_ * n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k < n_; ++k) {
      const double aik = (*this)(i, k);
      for (std::size_t j = 0; j < n_; ++j) t[i * n_ + j] += aik * b(k, j);
    }
  }
  SymMatrix m(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i; j < n_; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n_; ++k) s += t[i * n_ + k] * (*this)(k, j);
      m.at(i, j) = m.at(j, i) = s;
    }
  }
  return m;
}

Vector SymMatrix::apply(const Vector& x) const {
  if (x.size() != n_) fail(ErrorKind::DimensionMismatch, "vector length differs from n");
  Vector y(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) y[i] += (*this)(i, j) * x[j];
  }
  return y;
}

double SymMatrix::quadratic(const Vector& x) const { return dot(apply(x), x); }

double SymMatrix::frobenius() const {
  return std::sqrt(std::inner_product(a_.begin(), a_.end(), a_.begin(), 0.0));
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

std::vector<Vector> SymMatrix::rows() const {
  std::vector<Vector> r(n_, Vector(n_));
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) r[i][j] = (*this)(i, j);
  }
  return r;
}

EigenDecomposition eigen(const SymMatrix& input) {
  const std::size_t n = input.n();
  SymMatrix a = input;
  std::vector<Vector> v(n, Vector(n, 0.0));  // v[i][k]: entry i of eigenvector k
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;

  const double target = 1e-14 * input.frobenius();
  auto off = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) s += a(i, j) * a(i, j);
      }
    }
    return std::sqrt(s);
  };

  EigenDecomposition out;
  while (out.sweeps < 50 && off() > target) {
    ++out.sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a.at(k, p) = c * akp - s * akq;
          a.at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a.at(p, k) = c * apk - s * aqk;
          a.at(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k][p];
          const double vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  for (auto k : order) {
    out.values.push_back(a(k, k));
    Vector col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = v[i][k];
    out.vectors.push_back(std::move(col));
  }
  return out;
}

SymMatrix from_spectrum(const std::vector<Vector>& vectors, const Vector& values) {
  SymMatrix m = SymMatrix::zero(vectors.front().size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    const Vector& x = vectors[k];
    for (std::size_t i = 0; i < m.n(); ++i) {
      for (std::size_t j = 0; j < m.n(); ++j) m.at(i, j) += values[k] * x[i] * x[j];
    }
  }
  return m;
}

double lambda_min(const SymMatrix& a) { return eigen(a).values.front(); }
double lambda_max(const SymMatrix& a) { return eigen(a).values.back(); }

bool psd_leq(const SymMatrix& a, const SymMatrix& b, const PsdTolerance& tol) {
  if (a.n() != b.n()) fail(ErrorKind::DimensionMismatch, "matrix sizes differ");
  return lambda_min(b - a) >= -tol.eig_tol;
}

SymMatrix rank_one_projection(const Vector& x) {
  if (std::fabs(norm(x) - 1.0) > 1e-12) fail(ErrorKind::NotUnit, "projection needs a unit vector");
  return SymMatrix::outer(x);
}

EngagementWitness engagement_witness(const Vector& x) {
  const std::size_t n = x.size();
  check_n(n);
  const SymMatrix px = rank_one_projection(x);

  std::size_t k = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (std::fabs(x[i]) < std::fabs(x[k])) k = i;
  }
  Vector w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = (i == k ? 1.0 : 0.0) - x[k] * x[i];
  const double wn = norm(w);
  for (double& c : w) c /= wn;
  for (double c : w) {
    if (c == 0.0) continue;
    if (c < 0.0) {
      for (double& d : w) d = -d;
    }
    break;
  }

  EngagementWitness out;
  out.w = w;
  out.y.resize(n);
  out.z.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.y[i] = (x[i] + w[i]) / std::sqrt(2.0);
    out.z[i] = (x[i] - w[i]) / std::sqrt(2.0);
  }
  const SymMatrix rhs = SymMatrix::outer(out.y) + SymMatrix::outer(out.z) - SymMatrix::outer(out.w);
  out.residual = (px - rhs).frobenius();
  return out;
}

Vector random_unit(std::size_t n, Rng& rng) {
  Vector x(n);
  double s = 0.0;
  do {
    for (auto& c : x) c = rng.normal();
    s = norm(x);
  } while (s < 1e-8);
  for (auto& c : x) c /= s;
  return x;
}

SymMatrix random_symmetric(std::size_t n, Rng& rng) {
  std::vector<Vector> rows(n, Vector(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) rows[i][j] = rows[j][i] = rng.normal();
  }
  return SymMatrix::from_rows(rows);
}

SymMatrix random_psd(std::size_t n, Rng& rng) {
  std::vector<Vector> r(n, Vector(n));
  for (auto& row : r) {
    for (auto& c : row) c = rng.normal() / static_cast<double>(n);
  }
  std::vector<Vector> rows(n, Vector(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      rows[i][j] = rows[j][i] = dot(r[i], r[j]);
    }
  }
  return SymMatrix::from_rows(rows);
}

namespace {

// Runs body(i) for i < count; serial or OpenMP, rethrowing the first error in index order.
template <class Body>
void for_each_trial(std::size_t count, Execution exec, Body body) {
  std::vector<std::exception_ptr> errors(count);
  auto guarded = [&](std::size_t i) {
    try {
      body(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::size_t i = 0; i < count; ++i) guarded(i);
  } else {
    for (std::size_t i = 0; i < count; ++i) guarded(i);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

SupCheck identity_sup_check(const SymMatrix& b, std::size_t m, std::uint64_t seed, const PsdTolerance& tol,
                            Execution exec) {
  const std::size_t n = b.n();
  std::vector<Vector> xs(m);
  std::vector<char> ok(m, 1);
  std::vector<double> value(m, 0.0);
  for_each_trial(m, exec, [&](std::size_t i) {
    Rng rng = Rng::stream(seed, i);
    xs[i] = random_unit(n, rng);
    value[i] = b.quadratic(xs[i]);
    ok[i] = psd_leq(SymMatrix::outer(xs[i]), b, tol) ? 1 : 0;
  });

  SupCheck out;
  out.samples = m;
  const EigenDecomposition eb = eigen(b);
  out.lambda_min = eb.values.front();
  for (std::size_t i = 0; i < m; ++i) {
    if (ok[i]) continue;
    ++out.failures;
    if (!out.witness || value[i] < out.witness_value) {
      out.witness = xs[i];
      out.witness_value = value[i];
    }
  }
  if (out.failures > 0) {
    out.verdict = SupCheck::Verdict::NotUpperBound;
  } else if (out.lambda_min >= 1.0 - tol.cmp_tol) {
    out.verdict = SupCheck::Verdict::Consistent;
  } else {
    out.verdict = SupCheck::Verdict::Inconsistent;
    out.witness = eb.vectors.front();
    out.witness_value = out.lambda_min;
  }
  return out;
}

ConjugationMap ConjugationMap::make(const SymMatrix& a, const PsdTolerance& tol) {
  const EigenDecomposition e = eigen(a);
  if (e.values.front() <= tol.eig_tol) fail(ErrorKind::NotPositiveDefinite, "conjugation needs a positive definite matrix");
  Vector root(e.values.size()), inv_root(e.values.size());
  for (std::size_t k = 0; k < e.values.size(); ++k) {
    root[k] = std::sqrt(e.values[k]);
    inv_root[k] = 1.0 / root[k];
  }
  ConjugationMap t;
  t.sqrt_ = from_spectrum(e.vectors, root);
  t.inv_sqrt_ = from_spectrum(e.vectors, inv_root);
  return t;
}

ConjugationBattery conjugation_battery(const SymMatrix& a, std::size_t pairs, std::uint64_t seed,
                                       const PsdTolerance& tol, Execution exec) {
  const ConjugationMap t = ConjugationMap::make(a, tol);
  const std::size_t n = a.n();
  std::vector<char> comparable(pairs, 0), failed(pairs, 0);
  std::vector<double> min_eig(pairs, 0.0);
  const PsdTolerance cmp{tol.cmp_tol, tol.cmp_tol};
  for_each_trial(pairs, exec, [&](std::size_t i) {
    Rng rng = Rng::stream(seed, i);
    const SymMatrix q1 = random_psd(n, rng);
    const SymMatrix q2 = (i % 2 == 0) ? q1 + random_psd(n, rng) : random_psd(n, rng);
    const SymMatrix t1 = t.apply(q1);
    const SymMatrix t2 = t.apply(q2);
    const bool before = psd_leq(q1, q2, cmp);
    const bool after = psd_leq(t1, t2, cmp);
    comparable[i] = before ? 1 : 0;
    failed[i] = before != after ? 1 : 0;
    min_eig[i] = std::min(lambda_min(t1), lambda_min(t2));
  });
  ConjugationBattery out;
  out.pairs = pairs;
  out.min_image_eigenvalue = pairs ? *std::min_element(min_eig.begin(), min_eig.end()) : 0.0;
  for (std::size_t i = 0; i < pairs; ++i) {
    out.comparable += comparable[i];
    out.failures += failed[i];
  }
  return out;
}

EngagementTrials engagement_trials(std::size_t trials, std::uint64_t seed, Execution exec) {
  std::vector<double> res(trials, 0.0);
  for_each_trial(trials, exec, [&](std::size_t i) {
    Rng rng = Rng::stream(seed, i);
    const auto n = static_cast<std::size_t>(rng.between(2, 8));
    res[i] = engagement_witness(random_unit(n, rng)).residual;
  });
  EngagementTrials out;
  out.trials = trials;
  for (double r : res) out.max_residual = std::max(out.max_residual, r);
  return out;
}

namespace {

std::vector<Vector> schedule(std::size_t n, std::size_t k_max, std::uint64_t seed) {
  std::vector<Vector> dirs;
  for (std::size_t i = 0; i < n && dirs.size() < k_max; ++i) {
    Vector e(n, 0.0);
    e[i] = 1.0;
    dirs.push_back(e);
  }
  const double h = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (double sign : {1.0, -1.0}) {
        if (dirs.size() >= k_max) break;
        Vector e(n, 0.0);
        e[i] = h;
        e[j] = sign * h;
        dirs.push_back(e);
      }
    }
  }
  Rng rng = Rng::stream(seed, 3);
  while (dirs.size() < k_max) dirs.push_back(random_unit(n, rng));
  return dirs;
}

}  // namespace

std::vector<ApproxRow> infsup_approx(const SymMatrix& a, std::size_t k_max, std::uint64_t seed,
                                     const PsdTolerance& tol) {
  const std::size_t n = a.n();
  if (lambda_min(a) < -tol.eig_tol) fail(ErrorKind::NotPositiveDefinite, "matrix is not positive semidefinite");
  const SymMatrix shifted = a + SymMatrix::identity(n);
  const ConjugationMap t = ConjugationMap::make(shifted, tol);
  const SymMatrix id = SymMatrix::identity(n);

  std::vector<ApproxRow> table;
  std::vector<Vector> basis;  // orthonormal basis of the current span
  SymMatrix p = SymMatrix::zero(n);
  const std::vector<Vector> dirs = schedule(n, k_max, seed);
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    Vector v = dirs[k];
    for (const auto& b : basis) {
      const double c = dot(v, b);
      for (std::size_t i = 0; i < n; ++i) v[i] -= c * b[i];
    }
    const double len = norm(v);
    if (len > 1e-8) {
      for (auto& c : v) c /= len;
      basis.push_back(v);
      p = p + SymMatrix::outer(v);
    }
    ApproxRow row;
    row.k = k + 1;
    row.d = lambda_max(shifted - t.apply(p));
    row.e = lambda_max(id - p);
    table.push_back(row);
  }
  return table;
}

}  // namespace conelab::psd
