#pragma once

// Exact rational arithmetic on 64-bit terms.
//
// Every probability and moment in this library is a ratio of small
// integer counts, so results are kept exact instead of rounding through
// doubles. Intermediates run through __int128 and values are stored
// fully reduced with a positive denominator; anything that would not
// fit back into int64_t throws std::overflow_error.

#include <cmath>
#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace switchset {

namespace detail {

using i128 = __int128;

constexpr i128 abs128(i128 x) { return x < 0 ? -x : x; }

constexpr i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace detail

class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  constexpr Rational(std::int64_t value) : num_(value), den_(1) {}

  Rational(std::int64_t numerator, std::int64_t denominator) {
    assign(numerator, denominator);
  }

  static Rational from_i128(detail::i128 numerator, detail::i128 denominator) {
    if (denominator == 0) throw std::invalid_argument("rational: zero denominator");
    if (denominator < 0) {
      numerator = -numerator;
      denominator = -denominator;
    }
    detail::i128 g = detail::gcd128(numerator, denominator);
    if (g > 1) {
      numerator /= g;
      denominator /= g;
    }
    constexpr detail::i128 lo = INT64_MIN;
    constexpr detail::i128 hi = INT64_MAX;
    if (numerator < lo || numerator > hi || denominator > hi)
      throw std::overflow_error("rational: value does not fit in 64 bits");
    Rational r;
    r.num_ = static_cast<std::int64_t>(numerator);
    r.den_ = static_cast<std::int64_t>(denominator);
    return r;
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_integer() const { return den_ == 1; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from_i128(detail::i128(a.num_) * b.den_ + detail::i128(b.num_) * a.den_,
                     detail::i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from_i128(detail::i128(a.num_) * b.den_ - detail::i128(b.num_) * a.den_,
                     detail::i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_i128(detail::i128(a.num_) * b.num_, detail::i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational: division by zero");
    return from_i128(detail::i128(a.num_) * b.den_, detail::i128(a.den_) * b.num_);
  }
  Rational operator-() const { return from_i128(-detail::i128(num_), den_); }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    detail::i128 lhs = detail::i128(a.num_) * b.den_;
    detail::i128 rhs = detail::i128(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

 private:
  void assign(std::int64_t numerator, std::int64_t denominator) {
    *this = from_i128(numerator, denominator);
  }

  std::int64_t num_;
  std::int64_t den_;
};

// Largest r with r*r <= x.
inline std::int64_t isqrt(std::int64_t x) {
  if (x < 0) throw std::invalid_argument("isqrt: negative input");
  if (x == 0) return 0;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(x)));
  while (r > 0 && r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

// Exact square root when the reduced numerator and denominator are both
// perfect squares; nullopt-like sentinel is avoided by the bool flag.
struct RationalSqrt {
  bool exact = false;
  Rational value;
};

inline RationalSqrt exact_sqrt(const Rational& x) {
  RationalSqrt out;
  if (x.num() < 0) throw std::domain_error("exact_sqrt: negative input");
  std::int64_t p = isqrt(x.num());
  std::int64_t q = isqrt(x.den());
  if (p * p == x.num() && q * q == x.den()) {
    out.exact = true;
    out.value = Rational(p, q);
  }
  return out;
}

}  // namespace switchset
