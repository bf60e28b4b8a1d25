#pragma once

#include "hnet/partition.hpp"
#include "hnet/rational.hpp"

#include <json.hpp>

#include <vector>

namespace hnet {

/// Irreducible character χ_λ(Δ) of S_d by the Murnaghan–Nakayama rule, memoized in a
/// process-wide cache that is safe for concurrent use. Throws WeightMismatch if |λ| ≠ |Δ|.
long character(const Partition& lambda, const Partition& delta);

/// dim λ = χ_λ(1^d).
long dimension(const Partition& lambda);

/// Number of standard Young tableaux of shape λ, counted by recursion on removable corners.
/// Independent of the character machinery; used to cross-check dimension().
mpz_class count_standard_tableaux(const Partition& lambda);

/// φ_λ(Δ) = |C_Δ| χ_λ(Δ) / dim λ.
Rational phi(const Partition& lambda, const Partition& delta);

/// Σ_{|λ|=|Δ|} χ_λ(Δ); equals the number of square roots in S_d of a fixed element of C_Δ.
Rational chi_sqrt(const Partition& delta);

/// Full table for one weight; rows and columns follow enumerate_partitions(d).
class CharacterTable {
public:
  explicit CharacterTable(int d);

  int weight() const { return d_; }
  const std::vector<Partition>& partitions() const { return parts_; }
  long at(std::size_t lambda_index, std::size_t delta_index) const {
    return values_[lambda_index * parts_.size() + delta_index];
  }
  long at(const Partition& lambda, const Partition& delta) const;

  /// {"weight": d, "values": {"(2,1)|(3)": -1, ...}}
  nlohmann::json to_json() const;

private:
  int d_;
  std::vector<Partition> parts_;
  std::vector<long> values_;
};

/// Truncated power-sum point (p_1, ..., p_d). Entries past the truncation are unknown,
/// not zero: asking for them is an error.
class PowerSumPoint {
public:
  PowerSumPoint() = default;
  explicit PowerSumPoint(std::vector<GaussianRational> values) : values_(std::move(values)) {}
  static PowerSumPoint zero(int weight);

  int weight() const { return static_cast<int>(values_.size()); }
  /// p_m, 1-based. Throws TruncationTooSmall when m exceeds the truncation.
  const GaussianRational& p(int m) const;
  const std::vector<GaussianRational>& values() const { return values_; }

  /// N·p = (N p_1, N p_2, ...).
  PowerSumPoint scaled(const GaussianRational& factor) const;
  /// (−p_1, −p_2, ...).
  PowerSumPoint negated() const { return scaled(GaussianRational(-1)); }
  /// p_Δ = ∏ p_{Δ_i}.
  GaussianRational monomial(const Partition& delta) const;

  friend bool operator==(const PowerSumPoint&, const PowerSumPoint&) = default;

private:
  std::vector<GaussianRational> values_;
};

/// Complete homogeneous (elementary Schur) functions h_0..h_k from exp(Σ p_m z^m / m).
std::vector<GaussianRational> complete_homogeneous(const PowerSumPoint& p, int k);

/// s_λ(p) by the Jacobi–Trudi determinant det(h_{λ_i − i + j}).
GaussianRational schur_at(const Partition& lambda, const PowerSumPoint& p);

/// s_λ(p) = Σ_Δ χ_λ(Δ)/z_Δ p_Δ, the character expansion. Independent second route.
GaussianRational schur_by_characters(const Partition& lambda, const PowerSumPoint& p);

/// Named power-sum specializations.
struct Specialization {
  enum class Kind { PInfinity, IdentityN, GeometricA, Qt, Scaled };

  Kind kind = Kind::PInfinity;
  long n = 1;                 // IdentityN, Scaled
  GaussianRational a;         // GeometricA
  Rational q, t;              // Qt
  std::vector<GaussianRational> base;  // Scaled: the unscaled point

  static Specialization p_infinity() { return {}; }
  static Specialization identity(long n);
  static Specialization geometric(GaussianRational a);
  static Specialization qt(Rational q, Rational t);
  static Specialization scaled(long n, PowerSumPoint base);

  /// The specialization truncated at `weight`. IdentityN gives p_m = N.
  PowerSumPoint point(int weight) const;
};

/// s_λ at a named specialization. IdentityN uses (N)_λ s_λ(p_∞), which vanishes for ℓ(λ) > N.
GaussianRational schur_special(const Partition& lambda, const Specialization& spec);

/// s_λ(p_∞) = dim λ / d!.
Rational schur_p_infinity(const Partition& lambda);

/// s_λ(I_N) = (N)_λ s_λ(p_∞).
Rational schur_identity(const Partition& lambda, long n);

}  // namespace hnet
