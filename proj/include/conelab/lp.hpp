#pragma once

#include "conelab/vec.hpp"

namespace conelab {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Vec x;           // optimal basic solution when status == Optimal
  Rational value;  // c . x
};

/// Exact two-phase simplex with Bland's rule:
///   minimize c.x  subject to  a x = b,  x >= 0.
/// The returned optimum is a basic solution, so at most rank(a) entries of x
/// are nonzero.
LpResult solve_lp(const Matrix& a, const Vec& b, const Vec& c);

/// Basic feasible solution of a x = b, x >= 0 (phase one only).
LpResult feasible_point(const Matrix& a, const Vec& b);

}  // namespace conelab
