#pragma once

#include "hnet/characters.hpp"
#include "hnet/matrix.hpp"
#include "hnet/network.hpp"
#include "hnet/partition.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace hnet {

/// Weight attached to a face of the ribbon graph in a Schur series.
struct FaceWeight {
  enum class Kind { PowerSums, Mobius };
  Kind kind = Kind::PowerSums;
  PowerSumPoint p;  // unscaled p^{(a)}; the series evaluates s_λ(N p^{(a)})

  static FaceWeight power_sums(PowerSumPoint p) { return {Kind::PowerSums, std::move(p)}; }
  /// A face carrying the BKP factor: Schur weight 1, lowers the degree by one.
  static FaceWeight mobius() { return {Kind::Mobius, {}}; }
  bool is_mobius() const { return kind == Kind::Mobius; }
};

/// Edge propagator: 1/s_λ(N p_∞) for Ginibre pairs, 1/s_λ(I_N) for Haar-unitary pairs.
enum class Propagator { Ginibre, Unitary };

struct SchurSeriesSpec {
  int weight = 0;  // d
  long n = 1;      // N
  RibbonGraphSummary summary;
  std::vector<FaceWeight> faces;  // one per face, F entries
  SourceMap sources{1};
  ContentProductSpec content;
  Propagator propagator = Propagator::Ginibre;
};

struct SeriesValue {
  GaussianRational value;
  /// (#power-sum faces) − n + V: the exponent of dim λ/d! once every Schur factor is expanded.
  int degree = 0;
  int mobius_faces = 0;
  int euler = 0;  // E* of the summary
};

/// C̃ for each vertex word of the summary.
std::vector<GaussianRationalMatrix> vertex_matrices(const RibbonGraphSummary& summary, const SourceMap& sources,
                                                    long n);

/// Weight-d part of Σ_{ℓ(λ)≤N} r_λ(x) · prop_λ^{−n} · ∏_{power-sum faces} s_λ(N p^{(a)}) · ∏_v s_λ(C̃_v).
SeriesValue theorem1_rhs(const SchurSeriesSpec& spec);

/// Single λ-term of theorem1_rhs (zero when ℓ(λ) > N).
GaussianRational theorem1_term(const SchurSeriesSpec& spec, const Partition& lambda);

/// E[∏_{a ≤ F−e} p_{μᵃ}(X_a) · ∏_{a > F−e} τ^B(X_a)] for n Ginibre pairs, by the Hurwitz expansion
///   ∏ z_{μᵃ} · N^{−nd} · Σ_{Δ¹..Δ^V} H_{F−e−n+V}(μ¹,…,μ^{F−e},Δ¹,…,Δ^V) ∏ p_{Δⁱ}(C̃_i).
/// The last `mobius_faces` loops carry τ^B; mu_list covers the others. Throws WeightMismatch.
GaussianRational theorem2_rhs(const RibbonGraphSummary& summary, const SourceMap& sources, long n,
                              const std::vector<Partition>& mu_list, int mobius_faces = 0);

/// Same expectation by the λ-sum: Σ_{λ⊢d, ℓ(λ)≤N} prop_λ^{−n} ∏_a χ_λ(μᵃ) ∏_v s_λ(C̃_v), i.e. the
/// coefficient of ∏ p^{(a)}_{μᵃ} in the Schur series, with z- and N-factors removed. Supports
/// both propagators; the unitary form is the Haar expectation.
GaussianRational schur_series_expectation(const RibbonGraphSummary& summary, const SourceMap& sources, long n,
                                          const std::vector<Partition>& mu_list, int mobius_faces = 0,
                                          Propagator propagator = Propagator::Ginibre);

/// N^{−n} ∏_v tr C̃_v.
GaussianRational expect_traces_formula(const RibbonGraphSummary& summary, const SourceMap& sources, long n);

/// Coefficients of τ_r(x, p, p*) = Σ_λ r_λ(x) s_λ(p) s_λ(p*) at weights 0..d_max.
std::vector<GaussianRational> tau_hyp_truncated(const ContentProductSpec& content, const PowerSumPoint& p,
                                                const PowerSumPoint& p_star, int d_max);

/// Coefficients of τ^B_r(M, x, p) = Σ_{ℓ(λ)≤M} r_λ(x) s_λ(p) at weights 0..d_max; no cap if M is empty.
std::vector<GaussianRational> tau_B_truncated(std::optional<int> max_length, const ContentProductSpec& content,
                                              const PowerSumPoint& p, int d_max);

/// p_m = −Σ_i d_i x_i^m for m = 1..weight.
PowerSumPoint miwa_specialize(const std::vector<std::pair<Rational, GaussianRational>>& params, int weight);

/// Term of theorem1_rhs re-indexed by shifted parts h_i = λ_i − i + N (i = 1..N).
struct BetaConfiguration {
  std::vector<int> shifted_parts;  // strictly decreasing, ≥ 0
  Partition lambda;
  GaussianRational weight;
};

struct BetaWeights {
  std::vector<BetaConfiguration> configurations;
  int vandermonde_exponent = 0;  // the series degree F − e − n + V
};

/// Weights are the exact λ-terms; the ensemble's overall normalization is not included.
BetaWeights beta_weights(const SchurSeriesSpec& spec);

}  // namespace hnet
