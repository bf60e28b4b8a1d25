#pragma once

#include "hnet/rational.hpp"

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace hnet {

/// Integer partition in canonical form: strictly positive, weakly decreasing parts.
/// The empty partition is the unique partition of 0.
class Partition {
public:
  Partition() = default;
  /// Sorts and validates; throws InputError on a non-positive part.
  Partition(std::vector<int> parts);  // NOLINT(google-explicit-constructor)
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  /// (1^d)
  static Partition ones(int d) { return Partition(std::vector<int>(static_cast<std::size_t>(d), 1)); }

  const std::vector<int>& parts() const { return parts_; }
  int weight() const { return weight_; }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  int operator[](std::size_t i) const { return parts_[i]; }
  /// Part i (0-based), or 0 past the end.
  int part_or_zero(std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }
  /// m_i for i = 1..largest part (index 0 unused).
  std::vector<int> multiplicities() const;

  std::string str() const;  // "(2,1)"

  friend bool operator==(const Partition&, const Partition&) = default;
  /// Lexicographic on parts; the enumeration order is the reverse of this.
  friend std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
    return a.parts_ <=> b.parts_;
  }

private:
  std::vector<int> parts_;
  int weight_ = 0;
};

/// All partitions of d in reverse-lexicographic order, (d) first and (1^d) last.
std::vector<Partition> enumerate_partitions(int d);

/// Partitions of d with at most max_length parts, same order.
std::vector<Partition> enumerate_partitions(int d, int max_length);

/// z_Δ = ∏ i^{m_i} m_i!, the centralizer order of the class of cycle type Δ.
Rational z_of(const Partition& delta);
/// |C_Δ| = d!/z_Δ.
mpz_class class_size(const Partition& delta);

Partition conjugate(const Partition& lambda);

/// (x)_λ = ∏_{(i,j)∈λ} (x + j − i).
Rational content_product(const Rational& x, const Partition& lambda);

/// One factor ((1 − q·t^y)/(1 − t^y))^power of a q,t-deformed content function r(y).
struct QtFactor {
  Rational q;
  Rational t;
  int power = 1;
};

/// Data for the generalized content product r_λ(x) = ∏_{(i,j)∈λ} r(x + j − i) with
/// r(y) = ∏_k (a_k + y) / ∏_k (b_k + y) · ∏ qt-factors(y).
/// Empty lists give r ≡ 1.
struct ContentProductSpec {
  std::vector<Rational> numerator_params;
  std::vector<Rational> denominator_params;
  Rational shift{0};
  std::vector<QtFactor> qt_factors;

  bool trivial() const {
    return numerator_params.empty() && denominator_params.empty() && qt_factors.empty();
  }
};

/// r_λ(x) for the given spec. Throws ZeroDenominatorContent when a denominator content
/// product vanishes, SingularSpecialization for a qt factor hitting t^y = 1.
Rational rational_content_weight(const ContentProductSpec& spec, const Partition& lambda);

struct PartitionHash {
  std::size_t operator()(const Partition& p) const noexcept;
};

}  // namespace hnet
