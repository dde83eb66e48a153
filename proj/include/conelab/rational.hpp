#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace conelab {

/// Exact rational number in lowest terms with a positive denominator.
///
/// Values whose numerator and denominator both fit in a signed 64-bit word
/// are stored inline and handled with 128-bit intermediates; anything larger
/// spills to a GMP rational. The representation is canonical (a value that
/// fits is never stored big), so equality never needs to cross forms.
class Rational {
 public:
  Rational() noexcept = default;
  Rational(std::int64_t value);  // NOLINT(google-explicit-constructor)
  Rational(int value) : Rational(static_cast<std::int64_t>(value)) {}  // NOLINT
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(const mpq_class& q);

  /// Accepts "p/q", signed integers and plain decimals such as "-0.25".
  static Rational parse(std::string_view text);
  /// Exact binary value of a finite double.
  static Rational from_double(double value);

  Rational(const Rational& other);
  Rational(Rational&& other) noexcept = default;
  Rational& operator=(const Rational& other);
  Rational& operator=(Rational&& other) noexcept = default;
  ~Rational() = default;

  int sign() const noexcept;
  bool is_zero() const noexcept { return !big_ && num_ == 0; }
  bool is_integer() const noexcept;
  bool is_small() const noexcept { return !big_; }

  Rational numerator() const;
  Rational denominator() const;

  double to_double() const;
  mpq_class to_mpq() const;
  std::string str() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  friend bool operator==(const Rational& a, const Rational& b) noexcept;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  static Rational from_mpq(mpq_class q);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

Rational abs(const Rational& q);
Rational pow(const Rational& q, unsigned exponent);

/// gcd / lcm of two integer-valued rationals (result is nonnegative).
Rational integer_gcd(const Rational& a, const Rational& b);
Rational integer_lcm(const Rational& a, const Rational& b);

/// Exact k-th root if q is the k-th power of a rational (k odd or q >= 0).
bool exact_root(const Rational& q, unsigned k, Rational& root);

std::ostream& operator<<(std::ostream& os, const Rational& q);

}  // namespace conelab
