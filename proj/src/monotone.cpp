#include "conelab/monotone.hpp"

#include <algorithm>
#include <cmath>

#include "conelab/errors.hpp"

namespace conelab {

MonotoneBijection MonotoneBijection::identity() { return affine(Rational(1), Rational(0)); }

MonotoneBijection MonotoneBijection::affine(Rational slope, Rational intercept) {
  if (slope.sign() <= 0) fail(ErrorKind::InvalidArgument, "affine bijection needs a positive slope");
  MonotoneBijection g;
  g.kind_ = Kind::Affine;
  g.slope_ = std::move(slope);
  g.intercept_ = std::move(intercept);
  return g;
}

MonotoneBijection MonotoneBijection::piecewise(std::vector<std::pair<Rational, Rational>> breakpoints) {
  if (breakpoints.size() < 2) fail(ErrorKind::InvalidArgument, "piecewise map needs at least two breakpoints");
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i - 1].first < breakpoints[i].first) || !(breakpoints[i - 1].second < breakpoints[i].second)) {
      fail(ErrorKind::InvalidArgument, "piecewise breakpoints must be strictly increasing");
    }
  }
  MonotoneBijection g;
  g.kind_ = Kind::PiecewiseLinear;
  g.points_ = std::move(breakpoints);
  return g;
}

MonotoneBijection MonotoneBijection::odd_power(unsigned exponent) {
  if (exponent == 0 || exponent % 2 == 0) fail(ErrorKind::InvalidArgument, "exponent must be odd and positive");
  MonotoneBijection g;
  g.kind_ = Kind::OddPower;
  g.exponent_ = exponent;
  return g;
}

namespace {

// Segment index for t: the first and last segments extend to infinity.
template <class Key>
std::size_t segment(const std::vector<std::pair<Rational, Rational>>& p, const Rational& t, Key key) {
  std::size_t i = 0;
  while (i + 2 < p.size() && !(t < key(p[i + 1]))) ++i;
  return i;
}

}  // namespace

Rational MonotoneBijection::eval(const Rational& t) const {
  switch (kind_) {
    case Kind::Affine:
      return slope_ * t + intercept_;
    case Kind::PiecewiseLinear: {
      const std::size_t i = segment(points_, t, [](const auto& pt) -> const Rational& { return pt.first; });
      const auto& [x0, y0] = points_[i];
      const auto& [x1, y1] = points_[i + 1];
      return y0 + (y1 - y0) / (x1 - x0) * (t - x0);
    }
    case Kind::OddPower:
      return pow(t, exponent_);
  }
  return t;
}

Rational MonotoneBijection::invert(const Rational& s, bool* exact) const {
  if (exact) *exact = true;
  switch (kind_) {
    case Kind::Affine:
      return (s - intercept_) / slope_;
    case Kind::PiecewiseLinear: {
      const std::size_t i = segment(points_, s, [](const auto& pt) -> const Rational& { return pt.second; });
      const auto& [x0, y0] = points_[i];
      const auto& [x1, y1] = points_[i + 1];
      return x0 + (x1 - x0) / (y1 - y0) * (s - y0);
    }
    case Kind::OddPower: {
      Rational root;
      if (exact_root(s, exponent_, root)) return root;
      if (exact) *exact = false;
      const double v = s.to_double();
      const double r = std::copysign(std::pow(std::fabs(v), 1.0 / exponent_), v);
      return Rational::from_double(r);
    }
  }
  return s;
}

bool MonotoneBijection::is_linear() const {
  switch (kind_) {
    case Kind::Affine:
      return intercept_.is_zero();
    case Kind::PiecewiseLinear: {
      // Linear iff every breakpoint lies on one line through the origin.
      const Rational c = points_.front().first.is_zero() ? points_[1].second / points_[1].first
                                                         : points_.front().second / points_.front().first;
      return std::all_of(points_.begin(), points_.end(), [&](const auto& p) { return p.second == c * p.first; });
    }
    case Kind::OddPower:
      return exponent_ == 1;
  }
  return false;
}

std::string MonotoneBijection::describe() const {
  switch (kind_) {
    case Kind::Affine:
      return "affine(slope=" + slope_.str() + ", intercept=" + intercept_.str() + ")";
    case Kind::PiecewiseLinear: {
      std::string s = "piecewise(";
      for (std::size_t i = 0; i < points_.size(); ++i) {
        if (i) s += ", ";
        s += "(" + points_[i].first.str() + "," + points_[i].second.str() + ")";
      }
      return s + ")";
    }
    case Kind::OddPower:
      return "odd_power(" + std::to_string(exponent_) + ")";
  }
  return {};
}

}  // namespace conelab
