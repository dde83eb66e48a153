#pragma once

#include <string>
#include <utility>
#include <vector>

#include "conelab/rational.hpp"

namespace conelab {

/// Strictly increasing bijection of Q (extended to R for odd powers) used as
/// a coordinate reparametrization. Evaluation is always exact; inversion is
/// exact except for odd powers at non-powers, where a double-precision
/// root is returned and flagged.
class MonotoneBijection {
 public:
  enum class Kind { Affine, PiecewiseLinear, OddPower };

  /// The identity map.
  MonotoneBijection() = default;

  static MonotoneBijection identity();
  /// slope > 0.
  static MonotoneBijection affine(Rational slope, Rational intercept);
  /// At least two points, strictly increasing in both coordinates; the end
  /// segments are continued beyond the first and last breakpoint.
  static MonotoneBijection piecewise(std::vector<std::pair<Rational, Rational>> breakpoints);
  /// t -> t^k for odd k >= 1.
  static MonotoneBijection odd_power(unsigned exponent);

  Kind kind() const noexcept { return kind_; }
  const Rational& slope() const noexcept { return slope_; }
  const Rational& intercept() const noexcept { return intercept_; }
  const std::vector<std::pair<Rational, Rational>>& breakpoints() const noexcept { return points_; }
  unsigned exponent() const noexcept { return exponent_; }

  Rational eval(const Rational& t) const;
  /// Preimage of s; `exact` is cleared when the result is an approximation.
  Rational invert(const Rational& s, bool* exact = nullptr) const;

  /// Inversion never approximates.
  bool exact_inverse() const noexcept { return kind_ != Kind::OddPower || exponent_ == 1; }
  bool fixes_zero() const { return eval(Rational(0)).is_zero(); }
  /// t -> c t for some c > 0.
  bool is_linear() const;

  std::string describe() const;

  friend bool operator==(const MonotoneBijection& a, const MonotoneBijection& b) = default;

 private:
  Kind kind_ = Kind::Affine;
  Rational slope_{1};
  Rational intercept_{0};
  std::vector<std::pair<Rational, Rational>> points_;
  unsigned exponent_ = 1;
};

}  // namespace conelab
