#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "conelab/battery.hpp"
#include "conelab/random.hpp"

namespace conelab::psd {

using Vector = std::vector<double>;

struct PsdTolerance {
  double eig_tol = 1e-10;  // psd_leq slack on the smallest eigenvalue
  double cmp_tol = 1e-9;   // comparisons of derived quantities
};

struct EigenDecomposition;

/// Dense symmetric matrix, 2 <= n <= 8, row-major storage.
class SymMatrix {
 public:
  SymMatrix() = default;
  /// Square rows; asymmetry must stay below 1e-14 max(1, max |a_ij|) and is
  /// then averaged away. Throws InvalidArgument, DimensionMismatch.
  static SymMatrix from_rows(const std::vector<Vector>& rows);
  static SymMatrix zero(std::size_t n);
  static SymMatrix identity(std::size_t n);
  static SymMatrix diagonal(const Vector& d);
  /// x x^T (no unit check).
  static SymMatrix outer(const Vector& x);

  std::size_t n() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  SymMatrix operator+(const SymMatrix& b) const;
  SymMatrix operator-(const SymMatrix& b) const;
  SymMatrix operator*(double s) const;
  /// A B A for symmetric A (this) and B: symmetric by construction.
  SymMatrix congruence(const SymMatrix& b) const;
  Vector apply(const Vector& x) const;
  double quadratic(const Vector& x) const;
  double frobenius() const;
  double trace() const;
  std::vector<Vector> rows() const;

 private:
  explicit SymMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}
  double& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }

  std::size_t n_ = 0;
  std::vector<double> a_;

  friend EigenDecomposition eigen(const SymMatrix& a);
  friend SymMatrix from_spectrum(const std::vector<Vector>& vectors, const Vector& values);
};

/// A = sum_k values[k] vectors[k] vectors[k]^T, values ascending.
struct EigenDecomposition {
  Vector values;
  std::vector<Vector> vectors;
  int sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops below
/// 1e-14 ||A||_F, at most 50 sweeps.
EigenDecomposition eigen(const SymMatrix& a);
SymMatrix from_spectrum(const std::vector<Vector>& vectors, const Vector& values);
double lambda_min(const SymMatrix& a);
double lambda_max(const SymMatrix& a);

/// lambda_min(B - A) >= -eig_tol. Throws DimensionMismatch.
bool psd_leq(const SymMatrix& a, const SymMatrix& b, const PsdTolerance& tol = {});

/// x x^T for | ||x|| - 1 | <= 1e-12; throws NotUnit otherwise.
SymMatrix rank_one_projection(const Vector& x);

struct EngagementWitness {
  Vector y, z, w;
  double residual = 0.0;  // ||P_x - (P_y + P_z - P_w)||_F
};

/// w is the normalized Gram-Schmidt complement of e_k against x (k the first
/// index minimizing |x_k|, sign fixed by the first nonzero entry);
/// y, z = (x +- w) / sqrt 2. Throws NotUnit.
EngagementWitness engagement_witness(const Vector& x);

struct SupCheck {
  enum class Verdict { Consistent, Inconsistent, NotUpperBound };
  Verdict verdict = Verdict::Consistent;
  double lambda_min = 0.0;
  std::size_t samples = 0;
  std::size_t failures = 0;
  std::optional<Vector> witness;  // failing sample with the smallest <Bx, x>
  double witness_value = 0.0;     // <Bx, x> at the witness
};

/// Tests P_x <= B on m random unit vectors x; if all pass, B >= I must hold.
SupCheck identity_sup_check(const SymMatrix& b, std::size_t m, std::uint64_t seed, const PsdTolerance& tol = {},
                            Execution exec = Execution::Serial);

/// Q -> A^{1/2} Q A^{1/2} for positive definite A.
class ConjugationMap {
 public:
  /// Throws NotPositiveDefinite unless lambda_min(A) > eig_tol.
  static ConjugationMap make(const SymMatrix& a, const PsdTolerance& tol = {});
  SymMatrix apply(const SymMatrix& q) const { return sqrt_.congruence(q); }
  SymMatrix apply_inverse(const SymMatrix& q) const { return inv_sqrt_.congruence(q); }
  const SymMatrix& sqrt() const noexcept { return sqrt_; }

 private:
  SymMatrix sqrt_;
  SymMatrix inv_sqrt_;
};

struct ConjugationBattery {
  std::size_t pairs = 0;
  std::size_t comparable = 0;  // pairs with Q1 <= Q2
  std::size_t failures = 0;    // pairs where T_A changed the answer
  double min_image_eigenvalue = 0.0;  // over T_A(Q) for the PSD samples
};

/// Half the pairs are built comparable (Q2 = Q1 + R R^T), half independent;
/// psd_leq(Q1, Q2) must equal psd_leq(T_A Q1, T_A Q2) at cmp_tol.
ConjugationBattery conjugation_battery(const SymMatrix& a, std::size_t pairs, std::uint64_t seed,
                                       const PsdTolerance& tol = {}, Execution exec = Execution::Serial);

struct EngagementTrials {
  std::size_t trials = 0;
  double max_residual = 0.0;
};

/// Random n in [2, 8] and random unit x per trial.
EngagementTrials engagement_trials(std::size_t trials, std::uint64_t seed, Execution exec = Execution::Serial);

struct ApproxRow {
  std::size_t k = 0;
  double d = 0.0;  // lambda_max(A + I - T_{A+I}(P_k))
  double e = 0.0;  // lambda_max((A + I - P_k) - A)
};

/// P_k projects onto the span of the first k schedule directions: the
/// coordinate axes, then (e_i +- e_j)/sqrt 2, then seeded random directions.
/// Both columns are nonincreasing in k. Throws NotPositiveDefinite if A is
/// not positive semidefinite.
std::vector<ApproxRow> infsup_approx(const SymMatrix& a, std::size_t k_max, std::uint64_t seed,
                                     const PsdTolerance& tol = {});

Vector random_unit(std::size_t n, Rng& rng);
/// Entries standard normal, symmetrized.
SymMatrix random_symmetric(std::size_t n, Rng& rng);
/// R R^T with R an n x n standard normal matrix scaled by 1/n.
SymMatrix random_psd(std::size_t n, Rng& rng);

}  // namespace conelab::psd
