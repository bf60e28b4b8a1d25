#include "hnet/rational.hpp"

#include "hnet/errors.hpp"

#include <ostream>

namespace hnet {

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw ArithmeticError("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0) throw InputError("not a rational number: '" + text + "'");
  if (q.get_den() == 0) throw InputError("zero denominator in '" + text + "'");
  q.canonicalize();
  return Rational(std::move(q));
}

Rational Rational::from_strings(const std::string& num, const std::string& den) {
  mpz_class n, d;
  if (n.set_str(num, 10) != 0 || d.set_str(den, 10) != 0)
    throw InputError("not an integer pair: " + num + "/" + den);
  return Rational(n, d);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw ArithmeticError("division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::pow(long exponent) const {
  if (exponent < 0) {
    if (is_zero()) throw ArithmeticError("zero raised to a negative power");
    return Rational(1) / pow(-exponent);
  }
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return Rational(n, d);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

GaussianRational GaussianRational::inverse() const {
  const Rational n = norm2();
  if (n.is_zero()) throw ArithmeticError("inverse of zero Gaussian rational");
  return {re / n, -im / n};
}

GaussianRational GaussianRational::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  GaussianRational result(1), base = *this;
  for (unsigned long e = static_cast<unsigned long>(exponent); e; e >>= 1) {
    if (e & 1UL) result *= base;
    if (e > 1) base *= base;
  }
  return result;
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (im.is_zero() && o.im.is_zero()) {
    re *= o.re;
    return *this;
  }
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
  if (z.im.is_zero()) return os << z.re;
  return os << "(" << z.re << (z.im.sign() < 0 ? " - " : " + ")
            << (z.im.sign() < 0 ? -z.im : z.im) << "i)";
}

mpz_class factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

}  // namespace hnet
