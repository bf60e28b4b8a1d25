#include "hnet/partition.hpp"

#include "hnet/errors.hpp"

#include <algorithm>
#include <functional>

namespace hnet {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (int p : parts_)
    if (p <= 0) throw InputError("partition parts must be positive");
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
  for (int p : parts_) weight_ += p;
}

std::vector<int> Partition::multiplicities() const {
  std::vector<int> m(static_cast<std::size_t>(parts_.empty() ? 1 : parts_.front() + 1), 0);
  for (int p : parts_) ++m[static_cast<std::size_t>(p)];
  return m;
}

std::string Partition::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(parts_[i]);
  }
  return s + ")";
}

namespace {

void enumerate_into(int remaining, int max_part, int slots, std::vector<int>& current,
                    std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(current);
    return;
  }
  if (slots == 0) return;
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    current.push_back(p);
    enumerate_into(remaining - p, p, slots - 1, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<Partition> enumerate_partitions(int d) { return enumerate_partitions(d, d); }

std::vector<Partition> enumerate_partitions(int d, int max_length) {
  if (d < 0) throw InputError("negative partition weight");
  std::vector<Partition> out;
  std::vector<int> current;
  enumerate_into(d, d, std::max(max_length, 0), current, out);
  return out;
}

Rational z_of(const Partition& delta) {
  const auto m = delta.multiplicities();
  mpz_class z = 1;
  for (std::size_t i = 1; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    mpz_class power;
    mpz_ui_pow_ui(power.get_mpz_t(), i, static_cast<unsigned long>(m[i]));
    z *= power * factorial(static_cast<unsigned>(m[i]));
  }
  return Rational(z, 1);
}

mpz_class class_size(const Partition& delta) {
  return factorial(static_cast<unsigned>(delta.weight())) / z_of(delta).num();
}

Partition conjugate(const Partition& lambda) {
  std::vector<int> out;
  if (lambda.empty()) return Partition();
  for (int col = 1; col <= lambda[0]; ++col) {
    int count = 0;
    for (int p : lambda.parts()) count += p >= col ? 1 : 0;
    out.push_back(count);
  }
  return Partition(std::move(out));
}

Rational content_product(const Rational& x, const Partition& lambda) {
  Rational result(1);
  for (int i = 1; i <= lambda.length(); ++i)
    for (int j = 1; j <= lambda[static_cast<std::size_t>(i - 1)]; ++j) result *= x + Rational(j - i);
  return result;
}

namespace {

Rational qt_node(const QtFactor& f, const Rational& y) {
  if (!y.is_integer()) throw SingularSpecialization("q,t content function needs an integer argument");
  const long exponent = y.num().get_si();
  const Rational tpow = f.t.pow(exponent);
  const Rational den = Rational(1) - tpow;
  if (den.is_zero()) throw SingularSpecialization("q,t content function: t^y = 1 at y = " + y.str());
  return ((Rational(1) - f.q * tpow) / den).pow(f.power);
}

}  // namespace

Rational rational_content_weight(const ContentProductSpec& spec, const Partition& lambda) {
  Rational num(1), den(1);
  for (const auto& a : spec.numerator_params) num *= content_product(a + spec.shift, lambda);
  for (const auto& b : spec.denominator_params) {
    Rational c = content_product(b + spec.shift, lambda);
    if (c.is_zero())
      throw ZeroDenominatorContent("content product (" + (b + spec.shift).str() + ")_" + lambda.str() +
                                   " vanishes");
    den *= c;
  }
  Rational result = num / den;
  if (!spec.qt_factors.empty()) {
    for (int i = 1; i <= lambda.length(); ++i)
      for (int j = 1; j <= lambda[static_cast<std::size_t>(i - 1)]; ++j)
        for (const auto& f : spec.qt_factors) result *= qt_node(f, spec.shift + Rational(j - i));
  }
  return result;
}

std::size_t PartitionHash::operator()(const Partition& p) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (int part : p.parts()) h = (h ^ static_cast<std::size_t>(part)) * 0x100000001b3ULL;
  return h;
}

}  // namespace hnet
