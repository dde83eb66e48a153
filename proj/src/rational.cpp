#include "conelab/rational.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "conelab/errors.hpp"

namespace conelab {
namespace {

__extension__ typedef __int128 i128;
__extension__ typedef unsigned __int128 u128;

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) {
  if (a == 0) return b;
  if (b == 0) return a;
  const int shift = std::countr_zero(a | b);
  a >>= std::countr_zero(a);
  do {
    b >>= std::countr_zero(b);
    if (a > b) std::swap(a, b);
    b -= a;
  } while (b != 0);
  return a << shift;
}

int ctz128(u128 x) {
  const auto lo = static_cast<std::uint64_t>(x);
  return lo != 0 ? std::countr_zero(lo) : 64 + std::countr_zero(static_cast<std::uint64_t>(x >> 64));
}

u128 gcd128(u128 a, u128 b) {
  if ((a >> 64) == 0 && (b >> 64) == 0) {
    return gcd64(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
  }
  if (a == 0) return b;
  if (b == 0) return a;
  const int shift = ctz128(a | b);
  a >>= ctz128(a);
  do {
    b >>= ctz128(b);
    if (a > b) std::swap(a, b);
    b -= a;
  } while (b != 0);
  return a << shift;
}

u128 uabs(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

bool fits(i128 v) { return v <= kMax && v >= -kMax; }

mpq_class small_to_mpq(std::int64_t num, std::int64_t den) {
  mpq_class q;
  mpq_set_si(q.get_mpq_t(), num, static_cast<unsigned long>(den));
  return q;
}

mpz_class i128_to_mpz(i128 v) {
  const bool neg = v < 0;
  u128 u = uabs(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

}  // namespace

Rational::Rational(std::int64_t value) {
  if (value == std::numeric_limits<std::int64_t>::min()) {
    *this = from_mpq(mpq_class(small_to_mpq(value + 1, 1) - 1));
  } else {
    num_ = value;
  }
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  constexpr auto kMin = std::numeric_limits<std::int64_t>::min();
  if (num != kMin && den != kMin) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::uint64_t g = gcd64(static_cast<std::uint64_t>(num < 0 ? -num : num), static_cast<std::uint64_t>(den));
    num_ = num / static_cast<std::int64_t>(g);
    den_ = den / static_cast<std::int64_t>(g);
    return;
  }
  mpq_class q(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  q.canonicalize();
  *this = from_mpq(std::move(q));
}

Rational::Rational(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  *this = from_mpq(std::move(c));
}

Rational::Rational(const Rational& other)
    : num_(other.num_),
      den_(other.den_),
      big_(other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr) {}

Rational& Rational::operator=(const Rational& other) {
  if (this != &other) {
    num_ = other.num_;
    den_ = other.den_;
    if (other.big_) {
      if (big_) {
        *big_ = *other.big_;
      } else {
        big_ = std::make_unique<mpq_class>(*other.big_);
      }
    } else {
      big_.reset();
    }
  }
  return *this;
}

// Assumes q is canonical.
Rational Rational::from_mpq(mpq_class q) {
  Rational r;
  const mpz_srcptr n = q.get_num_mpz_t();
  const mpz_srcptr d = q.get_den_mpz_t();
  if (mpz_fits_slong_p(n) && mpz_fits_slong_p(d)) {
    const long nv = mpz_get_si(n);
    if (nv != std::numeric_limits<long>::min()) {
      r.num_ = nv;
      r.den_ = mpz_get_si(d);
      return r;
    }
  }
  r.big_ = std::make_unique<mpq_class>(std::move(q));
  return r;
}

Rational Rational::parse(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (ch != ' ' && ch != '\t') s.push_back(ch);
  }
  if (!s.empty() && s.front() == '+') s.erase(s.begin());
  if (s.empty()) fail(ErrorKind::ParseError, "empty rational");

  const auto bad = [&] { fail(ErrorKind::ParseError, "malformed rational '" + std::string(text) + "'"); };
  const auto digits_only = [](std::string_view v, bool allow_sign) {
    if (v.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (v[0] == '-')) i = 1;
    if (i == v.size()) return false;
    for (; i < v.size(); ++i) {
      if (v[i] < '0' || v[i] > '9') return false;
    }
    return true;
  };

  const auto slash = s.find('/');
  const auto dot = s.find('.');
  if (slash != std::string::npos) {
    const std::string_view num(s.data(), slash);
    const std::string_view den(s.data() + slash + 1, s.size() - slash - 1);
    if (!digits_only(num, true) || !digits_only(den, false)) bad();
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) fail(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
    mpq_class q(n, d);
    q.canonicalize();
    return from_mpq(std::move(q));
  }
  if (dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    const std::string frac = s.substr(dot + 1);
    bool neg = false;
    if (!whole.empty() && whole[0] == '-') {
      neg = true;
      whole.erase(whole.begin());
    }
    if (whole.empty()) whole = "0";
    if (!digits_only(whole, false) || (!frac.empty() && !digits_only(frac, false))) bad();
    mpz_class n(whole + frac, 10);
    mpz_class d;
    mpz_ui_pow_ui(d.get_mpz_t(), 10, frac.size());
    if (neg) n = -n;
    mpq_class q(n, d);
    q.canonicalize();
    return from_mpq(std::move(q));
  }
  if (!digits_only(s, true)) bad();
  return from_mpq(mpq_class(mpz_class(s, 10)));
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) fail(ErrorKind::InvalidArgument, "non-finite double");
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), value);
  return from_mpq(std::move(q));
}

int Rational::sign() const noexcept {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

bool Rational::is_integer() const noexcept {
  if (big_) return mpz_cmp_ui(big_->get_den_mpz_t(), 1) == 0;
  return den_ == 1;
}

Rational Rational::numerator() const {
  if (big_) return from_mpq(mpq_class(big_->get_num()));
  return Rational(num_);
}

Rational Rational::denominator() const {
  if (big_) return from_mpq(mpq_class(big_->get_den()));
  return Rational(den_);
}

double Rational::to_double() const {
  if (big_) return big_->get_d();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

mpq_class Rational::to_mpq() const { return big_ ? *big_ : small_to_mpq(num_, den_); }

std::string Rational::str() const {
  if (big_) return big_->get_str(10);
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
  if (big_) return from_mpq(mpq_class(-*big_));
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational operator+(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == 1 && b.den_ == 1) {
      std::int64_t s;
      if (!__builtin_add_overflow(a.num_, b.num_, &s) && s != std::numeric_limits<std::int64_t>::min()) {
        return Rational(s);
      }
    }
    const i128 n = static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_;
    const i128 d = static_cast<i128>(a.den_) * b.den_;
    if (n == 0) return Rational();
    const u128 g = gcd128(uabs(n), static_cast<u128>(d));
    const i128 rn = n / static_cast<i128>(g);
    const i128 rd = d / static_cast<i128>(g);
    if (fits(rn) && fits(rd)) {
      Rational r;
      r.num_ = static_cast<std::int64_t>(rn);
      r.den_ = static_cast<std::int64_t>(rd);
      return r;
    }
    mpq_class q(i128_to_mpz(rn), i128_to_mpz(rd));
    return Rational::from_mpq(std::move(q));
  }
  return Rational::from_mpq(mpq_class(a.to_mpq() + b.to_mpq()));
}

Rational operator-(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    Rational nb;
    nb.num_ = -b.num_;
    nb.den_ = b.den_;
    return a + nb;
  }
  return Rational::from_mpq(mpq_class(a.to_mpq() - b.to_mpq()));
}

Rational operator*(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.num_ == 0 || b.num_ == 0) return Rational();
    const std::uint64_t g1 = gcd64(static_cast<std::uint64_t>(a.num_ < 0 ? -a.num_ : a.num_),
                                   static_cast<std::uint64_t>(b.den_));
    const std::uint64_t g2 = gcd64(static_cast<std::uint64_t>(b.num_ < 0 ? -b.num_ : b.num_),
                                   static_cast<std::uint64_t>(a.den_));
    const i128 n = static_cast<i128>(a.num_ / static_cast<std::int64_t>(g1)) *
                   (b.num_ / static_cast<std::int64_t>(g2));
    const i128 d = static_cast<i128>(a.den_ / static_cast<std::int64_t>(g2)) *
                   (b.den_ / static_cast<std::int64_t>(g1));
    if (fits(n) && fits(d)) {
      Rational r;
      r.num_ = static_cast<std::int64_t>(n);
      r.den_ = static_cast<std::int64_t>(d);
      return r;
    }
    mpq_class q(i128_to_mpz(n), i128_to_mpz(d));
    return Rational::from_mpq(std::move(q));
  }
  return Rational::from_mpq(mpq_class(a.to_mpq() * b.to_mpq()));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::domain_error("Rational: division by zero");
  if (!b.big_) {
    Rational inv;
    inv.num_ = b.num_ < 0 ? -b.den_ : b.den_;
    inv.den_ = b.num_ < 0 ? -b.num_ : b.num_;
    return a * inv;
  }
  return Rational::from_mpq(mpq_class(a.to_mpq() / b.to_mpq()));
}

Rational& Rational::operator+=(const Rational& rhs) { return *this = *this + rhs; }
Rational& Rational::operator-=(const Rational& rhs) { return *this = *this - rhs; }
Rational& Rational::operator*=(const Rational& rhs) { return *this = *this * rhs; }
Rational& Rational::operator/=(const Rational& rhs) { return *this = *this / rhs; }

bool operator==(const Rational& a, const Rational& b) noexcept {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    const i128 lhs = static_cast<i128>(a.num_) * b.den_;
    const i128 rhs = static_cast<i128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }
  const int c = cmp(a.to_mpq(), b.to_mpq());
  return c <=> 0;
}

Rational abs(const Rational& q) { return q.sign() < 0 ? -q : q; }

Rational pow(const Rational& q, unsigned exponent) {
  Rational result(1);
  Rational base = q;
  while (exponent != 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent != 0) base *= base;
  }
  return result;
}

Rational integer_gcd(const Rational& a, const Rational& b) {
  if (!a.is_integer() || !b.is_integer()) fail(ErrorKind::InvalidArgument, "integer_gcd on non-integers");
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.to_mpq().get_num_mpz_t(), b.to_mpq().get_num_mpz_t());
  return Rational(mpq_class(g));
}

Rational integer_lcm(const Rational& a, const Rational& b) {
  if (!a.is_integer() || !b.is_integer()) fail(ErrorKind::InvalidArgument, "integer_lcm on non-integers");
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), a.to_mpq().get_num_mpz_t(), b.to_mpq().get_num_mpz_t());
  return Rational(mpq_class(l));
}

bool exact_root(const Rational& q, unsigned k, Rational& root) {
  if (k == 0) return false;
  if (q.sign() < 0 && k % 2 == 0) return false;
  const mpq_class v = q.to_mpq();
  mpz_class n = abs(v.get_num());
  mpz_class d = v.get_den();
  mpz_class rn;
  mpz_class rd;
  if (mpz_root(rn.get_mpz_t(), n.get_mpz_t(), k) == 0) return false;
  if (mpz_root(rd.get_mpz_t(), d.get_mpz_t(), k) == 0) return false;
  if (q.sign() < 0) rn = -rn;
  root = Rational(mpq_class(rn, rd));
  return true;
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NotPointed: return "NotPointed";
    case ErrorKind::NotGenerating: return "NotGenerating";
    case ErrorKind::NotInCone: return "NotInCone";
    case ErrorKind::NotComparable: return "NotComparable";
    case ErrorKind::NotOrderUnit: return "NotOrderUnit";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::UndefinedLattice: return "UndefinedLattice";
    case ErrorKind::RayIsEngaged: return "RayIsEngaged";
    case ErrorKind::NotConeMap: return "NotConeMap";
    case ErrorKind::NotSimplicial: return "NotSimplicial";
    case ErrorKind::MapCountMismatch: return "MapCountMismatch";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::NotExtreme: return "NotExtreme";
    case ErrorKind::SameRay: return "SameRay";
    case ErrorKind::NotColinear: return "NotColinear";
    case ErrorKind::DegenerateSpan: return "DegenerateSpan";
    case ErrorKind::NotUnit: return "NotUnit";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
  }
  return "Unknown";
}

}  // namespace conelab
