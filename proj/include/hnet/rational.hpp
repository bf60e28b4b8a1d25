#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace hnet {

/// Arbitrary-precision rational in canonical form (reduced, positive denominator).
class Rational {
public:
  Rational() = default;
  Rational(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : v_(v) {}   // NOLINT(google-explicit-constructor)
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Parses "p", "-p" or "p/q".
  static Rational parse(const std::string& text);
  static Rational from_strings(const std::string& num, const std::string& den);

  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }
  double to_double() const { return v_.get_d(); }
  std::string str() const { return v_.get_str(); }

  /// Exact integer power; negative exponents invert (throws on 0^-k).
  Rational pow(long exponent) const;

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

private:
  mpq_class v_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Element of Q(i).
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(long r) : re(r) {}                  // NOLINT(google-explicit-constructor)
  GaussianRational(int r) : re(r) {}                   // NOLINT(google-explicit-constructor)
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }
  GaussianRational conj() const { return {re, -im}; }
  Rational norm2() const { return re * re + im * im; }
  GaussianRational inverse() const;
  GaussianRational pow(long exponent) const;

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) = default;
};

std::ostream& operator<<(std::ostream& os, const GaussianRational& z);

/// n! as an exact integer.
mpz_class factorial(unsigned n);

}  // namespace hnet
