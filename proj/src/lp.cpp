#include "conelab/lp.hpp"

#include <optional>
#include <vector>

#include "conelab/errors.hpp"

namespace conelab {
namespace {

// Dense tableau. Row i < m holds constraint i, column `rhs` holds b.
// Row m holds reduced costs; its rhs entry holds -objective.
class Tableau {
 public:
  Tableau(const Matrix& a, const Vec& b) : m_(a.rows()), n_(a.cols()), t_(a.rows() + 1, a.cols() + a.rows() + 1) {
    rhs_ = n_ + m_;
    for (std::size_t i = 0; i < m_; ++i) {
      const bool flip = b[i].sign() < 0;
      for (std::size_t j = 0; j < n_; ++j) t_(i, j) = flip ? -a(i, j) : a(i, j);
      t_(i, n_ + i) = 1;
      t_(i, rhs_) = flip ? -b[i] : b[i];
      basis_.push_back(n_ + i);
    }
    active_.assign(m_, true);
  }

  void set_objective(const std::vector<Rational>& cost) {
    for (std::size_t j = 0; j <= rhs_; ++j) t_(m_, j) = j < cost.size() ? cost[j] : Rational();
    for (std::size_t i = 0; i < m_; ++i) {
      if (!active_[i]) continue;
      const Rational cb = basis_[i] < cost.size() ? cost[basis_[i]] : Rational();
      if (cb.is_zero()) continue;
      for (std::size_t j = 0; j <= rhs_; ++j) {
        if (!t_(i, j).is_zero()) t_(m_, j) -= cb * t_(i, j);
      }
    }
  }

  // Returns false if unbounded.
  bool optimize(std::size_t allowed_cols) {
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < allowed_cols; ++j) {
        if (t_(m_, j).sign() < 0) {
          enter = j;
          break;
        }
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (!active_[i] || t_(i, *enter).sign() <= 0) continue;
        const Rational ratio = t_(i, rhs_) / t_(i, *enter);
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = Rational(1) / t_(r, c);
    for (std::size_t j = 0; j <= rhs_; ++j) {
      if (!t_(r, j).is_zero()) t_(r, j) *= inv;
    }
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r || t_(i, c).is_zero()) continue;
      const Rational f = t_(i, c);
      for (std::size_t j = 0; j <= rhs_; ++j) {
        if (!t_(r, j).is_zero()) t_(i, j) -= f * t_(r, j);
      }
    }
    basis_[r] = c;
  }

  // After phase one: pivot artificial variables out of the basis, dropping
  // rows that turn out to be redundant.
  void expel_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (!active_[i] || basis_[i] < n_) continue;
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < n_; ++j) {
        if (!t_(i, j).is_zero()) {
          col = j;
          break;
        }
      }
      if (col) {
        pivot(i, *col);
      } else {
        active_[i] = false;
      }
    }
  }

  Rational objective() const { return -t_(m_, rhs_); }

  Vec solution() const {
    Vec x(n_);
    for (std::size_t i = 0; i < m_; ++i) {
      if (active_[i] && basis_[i] < n_) x[basis_[i]] = t_(i, rhs_);
    }
    return x;
  }

  std::size_t structural() const { return n_; }
  std::size_t artificial_end() const { return n_ + m_; }

 private:
  std::size_t m_;
  std::size_t n_;
  std::size_t rhs_ = 0;
  Matrix t_;
  std::vector<std::size_t> basis_;
  std::vector<bool> active_;
};

bool phase_one(Tableau& tab) {
  std::vector<Rational> cost(tab.artificial_end());
  for (std::size_t j = tab.structural(); j < tab.artificial_end(); ++j) cost[j] = 1;
  tab.set_objective(cost);
  tab.optimize(tab.artificial_end());
  if (!tab.objective().is_zero()) return false;
  tab.expel_artificials();
  return true;
}

void check_shapes(const Matrix& a, const Vec& b) {
  if (b.size() != a.rows()) fail(ErrorKind::DimensionMismatch, "lp: rhs length");
}

}  // namespace

LpResult feasible_point(const Matrix& a, const Vec& b) {
  check_shapes(a, b);
  Tableau tab(a, b);
  LpResult out;
  if (!phase_one(tab)) return out;
  out.status = LpStatus::Optimal;
  out.x = tab.solution();
  return out;
}

LpResult solve_lp(const Matrix& a, const Vec& b, const Vec& c) {
  check_shapes(a, b);
  if (c.size() != a.cols()) fail(ErrorKind::DimensionMismatch, "lp: cost length");
  Tableau tab(a, b);
  LpResult out;
  if (!phase_one(tab)) return out;
  tab.set_objective(c.coords());
  if (!tab.optimize(tab.structural())) {
    out.status = LpStatus::Unbounded;
    return out;
  }
  out.status = LpStatus::Optimal;
  out.x = tab.solution();
  out.value = dot(c, out.x);
  return out;
}

}  // namespace conelab
