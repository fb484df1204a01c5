#ifndef PERMWILF_ALGEBRAIC_HPP
#define PERMWILF_ALGEBRAIC_HPP

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include "permwilf/numbers.hpp"

namespace permwilf {

/// Raised when two values with different radicands meet in one operation.
class MixedRadicand : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// An exact value a + b*sqrt(c) with rational a, b and square-free integer c >= 2.
/// Rational values are stored with b = 0 and c = 0.
class AlgebraicValue {
public:
  AlgebraicValue() = default;
  AlgebraicValue(int a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  AlgebraicValue(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)

  AlgebraicValue(Rational a, Rational b, Count radicand) : a_(std::move(a)), b_(std::move(b)) {
    if (radicand < 0) throw std::domain_error("negative radicand");
    const auto [outside, inside] = split_square(radicand);
    b_ *= Rational(outside);
    c_ = inside;
    normalize();
  }

  /// sqrt(r) for a nonnegative rational r, exactly.
  static AlgebraicValue sqrt_of(const Rational& r) {
    if (r < 0) throw std::domain_error("sqrt of negative rational");
    const Count num = numerator(r), den = denominator(r);
    // sqrt(num/den) = sqrt(num*den)/den
    return AlgebraicValue(Rational(0), Rational(Count(1), den), num * den);
  }

  const Rational& rational_part() const noexcept { return a_; }
  const Rational& coefficient() const noexcept { return b_; }
  const Count& radicand() const noexcept { return c_; }
  bool is_rational() const noexcept { return b_ == 0; }

  int sign() const {
    const int sa = a_ > 0 ? 1 : (a_ < 0 ? -1 : 0);
    const int sb = b_ > 0 ? 1 : (b_ < 0 ? -1 : 0);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // opposite signs: compare a^2 with b^2 c
    const Rational lhs = a_ * a_, rhs = b_ * b_ * Rational(c_);
    if (lhs == rhs) return 0;
    return lhs > rhs ? sa : sb;
  }

  AlgebraicValue operator-() const {
    AlgebraicValue r = *this;
    r.a_ = -r.a_;
    r.b_ = -r.b_;
    return r;
  }

  friend AlgebraicValue operator+(const AlgebraicValue& x, const AlgebraicValue& y) {
    const Count c = common_radicand(x, y);
    return AlgebraicValue(x.a_ + y.a_, x.b_ + y.b_, c);
  }
  friend AlgebraicValue operator-(const AlgebraicValue& x, const AlgebraicValue& y) { return x + (-y); }
  friend AlgebraicValue operator*(const AlgebraicValue& x, const AlgebraicValue& y) {
    const Count c = common_radicand(x, y);
    return AlgebraicValue(x.a_ * y.a_ + x.b_ * y.b_ * Rational(c), x.a_ * y.b_ + x.b_ * y.a_, c);
  }

  AlgebraicValue square() const { return *this * *this; }

  /// The nonnegative square root when it lies in Q or Q(sqrt(c)).
  std::optional<AlgebraicValue> sqrt() const {
    if (sign() < 0) return std::nullopt;
    if (is_rational()) return sqrt_of(a_);
    // (x + y sqrt(c))^2 = a + b sqrt(c)  <=>  x^2 + c y^2 = a, 2xy = b.
    // With d = sqrt(a^2 - c b^2) rational, x^2 is (a + d)/2 or (a - d)/2.
    const Rational disc = a_ * a_ - b_ * b_ * Rational(c_);
    if (disc < 0) return std::nullopt;
    const auto d = exact_rational_sqrt(disc);
    if (!d) return std::nullopt;
    for (const Rational& x2 : {Rational((a_ + *d) / 2), Rational((a_ - *d) / 2)}) {
      if (x2 <= 0) continue;
      const auto x = exact_rational_sqrt(x2);
      if (!x) continue;
      const Rational y = b_ / (2 * *x);
      AlgebraicValue root(*x, y, c_);
      if (root.sign() < 0) root = -root;
      if (root.square() == *this) return root;
    }
    return std::nullopt;
  }

  Decimal to_decimal() const {
    Decimal v = Decimal(numerator(a_)) / Decimal(denominator(a_));
    if (b_ != 0)
      v += Decimal(numerator(b_)) / Decimal(denominator(b_)) * boost::multiprecision::sqrt(Decimal(c_));
    return v;
  }

  double to_double() const { return static_cast<double>(to_decimal()); }

  /// "9+4*sqrt(2)", "4", "1/2", "sqrt(2)", "3-2*sqrt(2)".
  std::string to_string() const {
    std::string out;
    if (a_ != 0 || b_ == 0) out = rational_text(a_);
    if (b_ != 0) {
      Rational mag = b_ < 0 ? Rational(-b_) : b_;
      if (b_ < 0)
        out += "-";
      else if (!out.empty())
        out += "+";
      if (mag != 1) out += rational_text(mag) + "*";
      out += "sqrt(" + c_.str() + ")";
    }
    return out;
  }

  friend bool operator==(const AlgebraicValue& x, const AlgebraicValue& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_ == 0 || x.c_ == y.c_);
  }
  friend bool operator<(const AlgebraicValue& x, const AlgebraicValue& y) { return (x - y).sign() < 0; }
  friend bool operator<=(const AlgebraicValue& x, const AlgebraicValue& y) { return (x - y).sign() <= 0; }

  friend std::ostream& operator<<(std::ostream& os, const AlgebraicValue& v) { return os << v.to_string(); }

private:
  static std::string rational_text(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
  }

  static Count common_radicand(const AlgebraicValue& x, const AlgebraicValue& y) {
    if (x.b_ == 0) return y.c_;
    if (y.b_ == 0 || x.c_ == y.c_) return x.c_;
    throw MixedRadicand("radicands " + x.c_.str() + " and " + y.c_.str() + " differ");
  }

  // radicand = outside^2 * inside with inside square-free
  static std::pair<Count, Count> split_square(Count radicand) {
    if (radicand == 0) return {0, 0};
    Count outside = 1, inside = 1;
    for (Count f = 2; f * f <= radicand; ++f) {
      while (radicand % (f * f) == 0) {
        radicand /= f * f;
        outside *= f;
      }
      if (radicand % f == 0) {
        radicand /= f;
        inside *= f;
      }
    }
    inside *= radicand;
    return {outside, inside};
  }

  static std::optional<Count> exact_integer_sqrt(const Count& v) {
    if (v < 0) return std::nullopt;
    const Count r = boost::multiprecision::sqrt(v);
    if (r * r != v) return std::nullopt;
    return r;
  }

  static std::optional<Rational> exact_rational_sqrt(const Rational& v) {
    const auto n = exact_integer_sqrt(numerator(v));
    const auto d = exact_integer_sqrt(denominator(v));
    if (!n || !d) return std::nullopt;
    return Rational(*n, *d);
  }

  void normalize() {
    if (c_ == 1) {
      a_ += b_;
      b_ = 0;
    }
    if (b_ == 0 || c_ == 0) {
      b_ = 0;
      c_ = 0;
    }
  }

  Rational a_ = 0;
  Rational b_ = 0;
  Count c_ = 0;
};

}  // namespace permwilf

#endif
