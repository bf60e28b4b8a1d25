#pragma once

#include "hnet/partition.hpp"
#include "hnet/rational.hpp"

#include <cstdint>
#include <vector>

namespace hnet {

/// Base Euler characteristic E* ≤ 2 and ramification profiles of a common weight d ≥ 1.
struct HurwitzQuery {
  int euler_base = 2;
  std::vector<Partition> profiles;
};

/// Common weight of the profiles; throws WeightMismatch (or InputError if empty/zero).
int common_weight(const std::vector<Partition>& profiles);

/// H_{E*}(Δ¹,…,Δᵏ) = Σ_λ (dim λ/d!)^{E*} ∏ φ_λ(Δⁱ). Disconnected covers, exact; any E*.
Rational mednykh(const HurwitzQuery& q);
inline Rational mednykh(int euler_base, const std::vector<Partition>& profiles) {
  return mednykh(HurwitzQuery{euler_base, profiles});
}

/// Enumeration budget for the brute-force oracles: (d!)^{k−1+2g} states.
inline constexpr double kBruteForceBudget = 1e8;

/// #{(a_j, b_j, A_i) : A_1⋯A_k ∏[a_j, b_j] = 1, A_i ∈ C_{Δⁱ}} / d!, base genus g* (E* = 2 − 2g*).
/// Throws SizeGuardExceeded when the estimated enumeration exceeds kBruteForceBudget.
Rational brute_force_orientable(int g_star, const std::vector<Partition>& profiles);

/// #{(R_j, A_i) : A_1⋯A_k ∏ R_j² = 1} / d! for the non-orientable base with
/// g̸ cross-caps (E* = 2 − g̸). g̸ ≥ 1.
Rational brute_force_klein(int g_slash, const std::vector<Partition>& profiles);

struct AggregateResult {
  Rational value;
  bool feasible = false;  // false when no profile tuple satisfies the Riemann–Hurwitz constraint
  long tuples = 0;        // admissible tuples summed
};

/// Σ over (Δ¹,…,Δᵏ), k = total_points − |fixed|, of H_{E*}(fixed…, Δ¹,…,Δᵏ) restricted to
/// d(E* − k − m) + Σℓ(fixed) + Σℓ(Δ) = euler_cover. Trivial profiles (1^d) are admitted.
AggregateResult aggregate(int euler_base, const std::vector<Partition>& fixed_profiles, int total_points,
                          int euler_cover);

struct DegreeLowering {
  Rational lhs;  // H_{E−1}(Δ…)
  Rational rhs;  // Σ_Δ H_E(Δ…, Δ) χ(Δ)
};

DegreeLowering degree_lowering_check(int euler_base, const std::vector<Partition>& profiles);

/// Euler characteristic of the cover by Riemann–Hurwitz: d·E* − Σ(d − ℓ(Δⁱ)).
int riemann_hurwitz_cover_euler(int euler_base, const std::vector<Partition>& profiles);

}  // namespace hnet
