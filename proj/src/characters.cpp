#include "hnet/characters.hpp"

#include "hnet/errors.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <utility>

namespace hnet {

namespace {

struct PairKey {
  Partition lambda;
  Partition rest;
  friend bool operator==(const PairKey&, const PairKey&) = default;
};

struct PairKeyHash {
  std::size_t operator()(const PairKey& k) const noexcept {
    PartitionHash h;
    return h(k.lambda) * 31 + h(k.rest);
  }
};

class CharacterCache {
public:
  bool find(const PairKey& key, long& out) const {
    std::shared_lock lock(mutex_);
    auto it = map_.find(key);
    if (it == map_.end()) return false;
    out = it->second;
    return true;
  }
  void insert(PairKey key, long value) {
    std::unique_lock lock(mutex_);
    map_.emplace(std::move(key), value);
  }

private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<PairKey, long, PairKeyHash> map_;
};

CharacterCache& cache() {
  static CharacterCache instance;
  return instance;
}

// Beta-set (first-column hook lengths) of λ with exactly ℓ(λ) beads.
std::vector<int> beta_set(const Partition& lambda) {
  const int len = lambda.length();
  std::vector<int> beta(static_cast<std::size_t>(len));
  for (int i = 0; i < len; ++i) beta[static_cast<std::size_t>(i)] = lambda[static_cast<std::size_t>(i)] + len - 1 - i;
  return beta;
}

Partition from_beta_set(std::vector<int> beta) {
  std::sort(beta.begin(), beta.end(), std::greater<>());
  const int len = static_cast<int>(beta.size());
  std::vector<int> parts;
  for (int i = 0; i < len; ++i) {
    const int p = beta[static_cast<std::size_t>(i)] - (len - 1 - i);
    if (p > 0) parts.push_back(p);
  }
  return Partition(std::move(parts));
}

// Murnaghan–Nakayama: strip rim hooks of length rest[0] from λ, recurse on the tail.
long mn(const Partition& lambda, const Partition& rest) {
  if (rest.empty()) return lambda.empty() ? 1 : 0;
  PairKey key{lambda, rest};
  long cached = 0;
  if (cache().find(key, cached)) return cached;

  const int k = rest[0];
  const Partition tail(std::vector<int>(rest.parts().begin() + 1, rest.parts().end()));
  const std::vector<int> beta = beta_set(lambda);
  long total = 0;
  for (std::size_t b = 0; b < beta.size(); ++b) {
    const int target = beta[b] - k;
    if (target < 0) continue;
    if (std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
    int between = 0;
    for (int v : beta)
      if (v > target && v < beta[b]) ++between;
    std::vector<int> moved = beta;
    moved[b] = target;
    const long sub = mn(from_beta_set(std::move(moved)), tail);
    total += (between % 2 == 0) ? sub : -sub;
  }
  cache().insert(std::move(key), total);
  return total;
}

void require_same_weight(const Partition& lambda, const Partition& delta) {
  if (lambda.weight() != delta.weight())
    throw WeightMismatch("weights differ: " + lambda.str() + " vs " + delta.str());
}

}  // namespace

long character(const Partition& lambda, const Partition& delta) {
  require_same_weight(lambda, delta);
  return mn(lambda, delta);
}

long dimension(const Partition& lambda) { return mn(lambda, Partition::ones(lambda.weight())); }

mpz_class count_standard_tableaux(const Partition& lambda) {
  static std::mutex m;
  static std::map<Partition, mpz_class> memo;
  if (lambda.weight() <= 1) return 1;
  {
    std::lock_guard lock(m);
    if (auto it = memo.find(lambda); it != memo.end()) return it->second;
  }
  // The largest entry n sits in a removable corner.
  mpz_class total = 0;
  const auto& parts = lambda.parts();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const bool corner = i + 1 == parts.size() || parts[i + 1] < parts[i];
    if (!corner) continue;
    std::vector<int> smaller = parts;
    --smaller[i];
    if (smaller[i] == 0) smaller.pop_back();
    total += count_standard_tableaux(Partition(std::move(smaller)));
  }
  std::lock_guard lock(m);
  memo.emplace(lambda, total);
  return total;
}

Rational phi(const Partition& lambda, const Partition& delta) {
  require_same_weight(lambda, delta);
  return Rational(class_size(delta) * character(lambda, delta), mpz_class(dimension(lambda)));
}

Rational chi_sqrt(const Partition& delta) {
  long total = 0;
  for (const auto& lambda : enumerate_partitions(delta.weight())) total += character(lambda, delta);
  return Rational(total);
}

CharacterTable::CharacterTable(int d) : d_(d), parts_(enumerate_partitions(d)) {
  values_.reserve(parts_.size() * parts_.size());
  for (const auto& lambda : parts_)
    for (const auto& delta : parts_) values_.push_back(character(lambda, delta));
}

long CharacterTable::at(const Partition& lambda, const Partition& delta) const {
  const auto li = std::find(parts_.begin(), parts_.end(), lambda);
  const auto di = std::find(parts_.begin(), parts_.end(), delta);
  if (li == parts_.end() || di == parts_.end()) throw WeightMismatch("partition not of table weight");
  return at(static_cast<std::size_t>(li - parts_.begin()), static_cast<std::size_t>(di - parts_.begin()));
}

nlohmann::json CharacterTable::to_json() const {
  nlohmann::json values = nlohmann::json::object();
  for (std::size_t i = 0; i < parts_.size(); ++i)
    for (std::size_t j = 0; j < parts_.size(); ++j) values[parts_[i].str() + "|" + parts_[j].str()] = at(i, j);
  return {{"weight", d_}, {"values", values}};
}

PowerSumPoint PowerSumPoint::zero(int weight) {
  return PowerSumPoint(std::vector<GaussianRational>(static_cast<std::size_t>(std::max(weight, 0))));
}

const GaussianRational& PowerSumPoint::p(int m) const {
  if (m < 1 || m > weight())
    throw TruncationTooSmall("p_" + std::to_string(m) + " requested from a point truncated at weight " +
                             std::to_string(weight()));
  return values_[static_cast<std::size_t>(m - 1)];
}

PowerSumPoint PowerSumPoint::scaled(const GaussianRational& factor) const {
  std::vector<GaussianRational> out = values_;
  for (auto& v : out) v *= factor;
  return PowerSumPoint(std::move(out));
}

GaussianRational PowerSumPoint::monomial(const Partition& delta) const {
  GaussianRational r(1);
  for (int part : delta.parts()) r *= p(part);
  return r;
}

std::vector<GaussianRational> complete_homogeneous(const PowerSumPoint& p, int k) {
  std::vector<GaussianRational> h(static_cast<std::size_t>(k + 1));
  h[0] = GaussianRational(1);
  for (int n = 1; n <= k; ++n) {
    GaussianRational acc;
    for (int m = 1; m <= n; ++m) acc += p.p(m) * h[static_cast<std::size_t>(n - m)];
    h[static_cast<std::size_t>(n)] = acc / GaussianRational(n);
  }
  return h;
}

namespace {

GaussianRational determinant(std::vector<std::vector<GaussianRational>> a) {
  const std::size_t n = a.size();
  GaussianRational det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return GaussianRational(0);
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    const GaussianRational inv = a[col][col].inverse();
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col].is_zero()) continue;
      const GaussianRational f = a[r][col] * inv;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

}  // namespace

GaussianRational schur_at(const Partition& lambda, const PowerSumPoint& p) {
  if (lambda.weight() > p.weight())
    throw TruncationTooSmall("s_" + lambda.str() + " needs power sums up to weight " +
                             std::to_string(lambda.weight()));
  if (lambda.empty()) return GaussianRational(1);
  const auto h = complete_homogeneous(p, lambda.weight());
  const std::size_t len = static_cast<std::size_t>(lambda.length());
  std::vector<std::vector<GaussianRational>> m(len, std::vector<GaussianRational>(len));
  for (std::size_t i = 0; i < len; ++i)
    for (std::size_t j = 0; j < len; ++j) {
      const int idx = lambda[i] - static_cast<int>(i) + static_cast<int>(j);
      if (idx >= 0) m[i][j] = h[static_cast<std::size_t>(idx)];
    }
  return determinant(std::move(m));
}

GaussianRational schur_by_characters(const Partition& lambda, const PowerSumPoint& p) {
  if (lambda.weight() > p.weight())
    throw TruncationTooSmall("s_" + lambda.str() + " needs power sums up to weight " +
                             std::to_string(lambda.weight()));
  GaussianRational total;
  for (const auto& delta : enumerate_partitions(lambda.weight())) {
    const long chi = character(lambda, delta);
    if (chi == 0) continue;
    total += p.monomial(delta) * GaussianRational(Rational(chi) / z_of(delta));
  }
  return total;
}

Specialization Specialization::identity(long n) {
  if (n < 1) throw InputError("identity specialization needs N >= 1");
  Specialization s;
  s.kind = Kind::IdentityN;
  s.n = n;
  return s;
}

Specialization Specialization::geometric(GaussianRational a) {
  Specialization s;
  s.kind = Kind::GeometricA;
  s.a = std::move(a);
  return s;
}

Specialization Specialization::qt(Rational q, Rational t) {
  Specialization s;
  s.kind = Kind::Qt;
  s.q = std::move(q);
  s.t = std::move(t);
  return s;
}

Specialization Specialization::scaled(long n, PowerSumPoint base) {
  Specialization s;
  s.kind = Kind::Scaled;
  s.n = n;
  s.base = base.values();
  return s;
}

PowerSumPoint Specialization::point(int weight) const {
  std::vector<GaussianRational> v(static_cast<std::size_t>(weight));
  for (int m = 1; m <= weight; ++m) {
    auto& slot = v[static_cast<std::size_t>(m - 1)];
    switch (kind) {
      case Kind::PInfinity:
        slot = GaussianRational(m == 1 ? 1 : 0);
        break;
      case Kind::IdentityN:
        slot = GaussianRational(n);
        break;
      case Kind::GeometricA:
        slot = a;
        break;
      case Kind::Qt: {
        const Rational den = Rational(1) - t.pow(m);
        if (den.is_zero())
          throw SingularSpecialization("p_m(q,t) undefined: t^" + std::to_string(m) + " = 1");
        slot = GaussianRational((Rational(1) - q.pow(m)) / den);
        break;
      }
      case Kind::Scaled:
        if (m > static_cast<int>(base.size()))
          throw TruncationTooSmall("scaled specialization truncated below weight " + std::to_string(weight));
        slot = base[static_cast<std::size_t>(m - 1)] * GaussianRational(n);
        break;
    }
  }
  return PowerSumPoint(std::move(v));
}

Rational schur_p_infinity(const Partition& lambda) {
  return Rational(mpz_class(dimension(lambda)), factorial(static_cast<unsigned>(lambda.weight())));
}

Rational schur_identity(const Partition& lambda, long n) {
  return content_product(Rational(n), lambda) * schur_p_infinity(lambda);
}

GaussianRational schur_special(const Partition& lambda, const Specialization& spec) {
  switch (spec.kind) {
    case Specialization::Kind::PInfinity:
      return GaussianRational(schur_p_infinity(lambda));
    case Specialization::Kind::IdentityN:
      if (lambda.length() > spec.n) return GaussianRational(0);
      return GaussianRational(schur_identity(lambda, spec.n));
    default:
      return schur_at(lambda, spec.point(lambda.weight()));
  }
}

}  // namespace hnet
