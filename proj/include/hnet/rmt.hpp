#pragma once

#include "hnet/matrix.hpp"
#include "hnet/network.hpp"
#include "hnet/partition.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace hnet {

/// p_{μ¹}(X₁)⋯p_{μ^F}(X_F) for X_a the product of Z_i C_i / Z_i† C_i* around loop a. The last
/// `mobius_faces` loops instead carry the weight-`mobius_weight` part of τ^B(X_a) = Σ_λ s_λ(X_a),
/// and mu_list then covers only the first F − mobius_faces loops.
struct TraceObservable {
  ChordNetwork network;
  std::vector<Partition> mu_list;
  SourceMap sources{1};
  long n = 1;
  int mobius_faces = 0;
  int mobius_weight = 0;  // 0: the weight of mu_list[0]
};

/// One factor G·S of a trace: G is Z_pair (or Z_pair† if conjugate), S = sources[source]
/// (identity if source < 0).
struct WickFactor {
  int pair = 1;
  bool conjugate = false;
  int source = -1;
};

/// Product of traces, each a cyclic list of factors.
using TraceProduct = std::vector<std::vector<WickFactor>>;

inline constexpr double kWickBudget = 1e7;

/// E[∏ tr(…)] for independent complex Ginibre Z_i with E[Z_ab Z̄_cd] = δ_ac δ_bd / N, by
/// summing over all perfect matchings between occurrences of each Z_i and Z_i†. Zero when
/// some Z_i is unbalanced. Throws SizeGuardExceeded when ∏ k_i! exceeds kWickBudget.
GaussianRational wick_trace_product(const TraceProduct& traces, const std::vector<GaussianRationalMatrix>& sources,
                                    long n, int threads = 1);

/// Exact Ginibre expectation of the observable.
GaussianRational wick_expectation(const TraceObservable& obs, int threads = 1);

struct MCOptions {
  long samples = 100000;
  std::uint64_t seed = 42;
  int threads = 1;
  /// Entry variance is variance_scale / N. Anything but 1 is a deliberately wrong ensemble.
  double variance_scale = 1.0;
};

struct MCReport {
  std::complex<double> estimate;
  std::complex<double> standard_error;  // componentwise
  long samples = 0;
  std::uint64_t seed = 0;

  /// |Re − Re x| ≤ k·σ_re and |Im − Im x| ≤ k·σ_im, with a floor for zero-variance estimates.
  bool within(const std::complex<double>& exact, double k = 4.0) const;
};

MCReport mc_ginibre(const TraceObservable& obs, const MCOptions& options);
MCReport mc_unitary(const TraceObservable& obs, const MCOptions& options);

enum class LemmaKind { SplitGinibre, JoinGinibre, SplitUnitary, JoinUnitary };

LemmaKind parse_lemma_kind(const std::string& text);

struct LemmaReport {
  GaussianRational exact_rhs;
  bool has_wick = false;
  GaussianRational wick_lhs;  // Ginibre kinds only
  MCReport mc;
};

/// Split: s_λ(A Z B Z†) vs s_λ(A) s_λ(B) / prop_λ. Join: s_μ(A Z) s_λ(Z† B) vs
/// δ_{μλ} s_λ(AB) / prop_λ. prop_λ = s_λ(N p_∞) (Ginibre) or s_λ(I_N) (unitary, Z → U).
/// Requires ℓ(λ), ℓ(μ) ≤ N and A, B of size N.
LemmaReport lemma_check(LemmaKind kind, const Partition& lambda, const Partition& mu, const GaussianRationalMatrix& a,
                        const GaussianRationalMatrix& b, long n, const MCOptions& options);

}  // namespace hnet
