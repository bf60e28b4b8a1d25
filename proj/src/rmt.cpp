#include "hnet/rmt.hpp"

#include "hnet/characters.hpp"
#include "hnet/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <thread>

namespace hnet {

// ---------------------------------------------------------------------------------------
// Exact Wick contraction

namespace {

struct Occurrences {
  int pair;
  std::vector<int> plain;      // positions of Z_pair
  std::vector<int> conjugate;  // positions of Z_pair†
};

double factorial_d(std::size_t k) { return std::tgamma(static_cast<double>(k) + 1.0); }

class WickEvaluator {
public:
  WickEvaluator(const TraceProduct& traces, const std::vector<GaussianRationalMatrix>& sources, long n)
      : sources_(sources), n_(n) {
    std::map<int, Occurrences> by_pair;
    for (const auto& trace : traces) {
      const int start = static_cast<int>(factors_.size());
      for (std::size_t i = 0; i < trace.size(); ++i) {
        const int pos = static_cast<int>(factors_.size());
        factors_.push_back(trace[i]);
        next_.push_back(i + 1 == trace.size() ? start : pos + 1);
        auto& occ = by_pair[trace[i].pair];
        occ.pair = trace[i].pair;
        (trace[i].conjugate ? occ.conjugate : occ.plain).push_back(pos);
      }
    }
    for (auto& [pair, occ] : by_pair) {
      if (occ.plain.size() != occ.conjugate.size()) balanced_ = false;
      pairs_.push_back(std::move(occ));
    }
    for (const auto& f : factors_)
      if (f.source >= static_cast<int>(sources_.size())) throw InputError("wick: source index out of range");
  }

  bool balanced() const { return balanced_; }

  double matchings() const {
    double m = 1;
    for (const auto& occ : pairs_) m *= factorial_d(occ.plain.size());
    return m;
  }

  // Sum over matchings whose first-pair permutation has rank ≡ shard (mod shards).
  GaussianRational run(int shard, int shards) const {
    std::vector<std::vector<int>> perms;
    for (const auto& occ : pairs_) {
      std::vector<int> p(occ.plain.size());
      std::iota(p.begin(), p.end(), 0);
      perms.push_back(std::move(p));
    }
    std::vector<int> partner(factors_.size());
    GaussianRational total;
    long rank = 0;
    while (true) {
      if (pairs_.empty() || rank % shards == shard) total += evaluate_all(perms, partner, 1);
      if (pairs_.empty() || !std::next_permutation(perms[0].begin(), perms[0].end())) break;
      ++rank;
    }
    return total;
  }

private:
  // Enumerates permutations of pairs [level..] and evaluates each complete matching.
  GaussianRational evaluate_all(std::vector<std::vector<int>>& perms, std::vector<int>& partner,
                                std::size_t level) const {
    if (level < pairs_.size()) {
      GaussianRational sum;
      auto& p = perms[level];
      std::sort(p.begin(), p.end());
      do {
        sum += evaluate_all(perms, partner, level + 1);
      } while (std::next_permutation(p.begin(), p.end()));
      return sum;
    }
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      const auto& occ = pairs_[i];
      for (std::size_t j = 0; j < occ.plain.size(); ++j) {
        const int f = occ.plain[j];
        const int g = occ.conjugate[static_cast<std::size_t>(perms[i][j])];
        partner[static_cast<std::size_t>(f)] = g;
        partner[static_cast<std::size_t>(g)] = f;
      }
    }
    return contract(partner);
  }

  // Index chains: the matrix following S_f is S_{partner(next(f))}.
  GaussianRational contract(const std::vector<int>& partner) const {
    std::vector<bool> seen(factors_.size(), false);
    GaussianRational value(1);
    for (std::size_t s = 0; s < factors_.size(); ++s) {
      if (seen[s]) continue;
      std::optional<GaussianRationalMatrix> product;
      for (std::size_t f = s; !seen[f];
           f = static_cast<std::size_t>(partner[static_cast<std::size_t>(next_[f])])) {
        seen[f] = true;
        const int src = factors_[f].source;
        if (src < 0) continue;
        product = product ? *product * sources_[static_cast<std::size_t>(src)] : sources_[static_cast<std::size_t>(src)];
      }
      value *= product ? product->trace() : GaussianRational(n_);
      if (value.is_zero()) return value;
    }
    return value;
  }

  const std::vector<GaussianRationalMatrix>& sources_;
  long n_;
  std::vector<WickFactor> factors_;
  std::vector<int> next_;
  std::vector<Occurrences> pairs_;
  bool balanced_ = true;
};

// Loop factor lists with source indices into a matrix list built from the source map.
struct LoopFactors {
  std::vector<std::vector<WickFactor>> loops;
  std::vector<GaussianRationalMatrix> matrices;
  std::vector<Symbol> matrix_symbols;
};

LoopFactors loop_factors(const TraceObservable& obs) {
  if (obs.sources.dimension() != obs.n)
    throw DimensionMismatch("sources are " + std::to_string(obs.sources.dimension()) + "x" +
                            std::to_string(obs.sources.dimension()) + ", expected N = " + std::to_string(obs.n));
  LoopFactors out;
  std::map<Symbol, int> index;
  for (const auto& loop : obs.network.darts()) {
    std::vector<WickFactor> factors;
    for (const auto& dart : loop) {
      const Symbol s{dart.pair, dart.conjugate};
      int src = -1;
      if (!obs.sources.is_identity(s)) {
        auto [it, inserted] = index.emplace(s, static_cast<int>(out.matrices.size()));
        if (inserted) {
          out.matrices.push_back(obs.sources.get(s));
          out.matrix_symbols.push_back(s);
        }
        src = it->second;
      }
      factors.push_back({dart.pair, dart.conjugate, src});
    }
    out.loops.push_back(std::move(factors));
  }
  return out;
}

void append_powers(TraceProduct& traces, const std::vector<WickFactor>& loop, const Partition& parts) {
  for (int k : parts.parts()) {
    std::vector<WickFactor> t;
    for (int r = 0; r < k; ++r) t.insert(t.end(), loop.begin(), loop.end());
    traces.push_back(std::move(t));
  }
}

int mobius_weight_of(const TraceObservable& obs) {
  if (obs.mobius_faces == 0) return 0;
  if (obs.mobius_weight > 0) return obs.mobius_weight;
  if (obs.mu_list.empty()) throw InputError("Mobius faces need a weight");
  return obs.mu_list.front().weight();
}

void check_observable(const TraceObservable& obs) {
  if (obs.n < 1) throw InputError("N must be >= 1");
  if (obs.mobius_faces < 0 || obs.mobius_faces > obs.network.faces()) throw InputError("invalid number of Mobius faces");
  if (static_cast<int>(obs.mu_list.size()) + obs.mobius_faces != obs.network.faces())
    throw InputError("mu list has " + std::to_string(obs.mu_list.size()) + " entries for " +
                     std::to_string(obs.network.faces() - obs.mobius_faces) + " power-sum loops");
}

// Σ_{|Δ|=w} (Σ_λ χ_λ(Δ)) / z_Δ · p_Δ: the weight-w part of Σ_λ s_λ.
std::vector<std::pair<Partition, Rational>> mobius_expansion(int w) {
  std::vector<std::pair<Partition, Rational>> out;
  for (const auto& delta : enumerate_partitions(w)) {
    const Rational c = chi_sqrt(delta) / z_of(delta);
    if (!c.is_zero()) out.emplace_back(delta, c);
  }
  return out;
}

}  // namespace

GaussianRational wick_trace_product(const TraceProduct& traces, const std::vector<GaussianRationalMatrix>& sources,
                                    long n, int threads) {
  const WickEvaluator eval(traces, sources, n);
  if (!eval.balanced()) return {};
  const double cost = eval.matchings();
  if (cost > kWickBudget)
    throw SizeGuardExceeded("wick: " + std::to_string(static_cast<long long>(cost)) + " matchings exceed budget", cost);

  long pairs = 0;
  for (const auto& t : traces)
    for (const auto& f : t) pairs += f.conjugate ? 0 : 1;
  const GaussianRational scale(Rational(n).pow(-pairs));

  threads = std::max(1, threads);
  if (threads == 1 || cost < 1000) return eval.run(0, 1) * scale;
  std::vector<GaussianRational> partial(static_cast<std::size_t>(threads));
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] { partial[static_cast<std::size_t>(t)] = eval.run(t, threads); });
  for (auto& th : pool) th.join();
  GaussianRational total;
  for (const auto& p : partial) total += p;
  return total * scale;
}

GaussianRational wick_expectation(const TraceObservable& obs, int threads) {
  check_observable(obs);
  const LoopFactors lf = loop_factors(obs);
  const std::size_t plain = obs.mu_list.size();

  TraceProduct base;
  for (std::size_t a = 0; a < plain; ++a) append_powers(base, lf.loops[a], obs.mu_list[a]);
  if (obs.mobius_faces == 0) return wick_trace_product(base, lf.matrices, obs.n, threads);

  // Expand each Möbius loop into Σ_Δ c_Δ p_Δ and sum over tuples.
  const auto expansion = mobius_expansion(mobius_weight_of(obs));
  GaussianRational total;
  std::vector<std::size_t> choice(static_cast<std::size_t>(obs.mobius_faces), 0);
  if (expansion.empty()) return total;
  while (true) {
    TraceProduct traces = base;
    Rational coeff(1);
    for (std::size_t b = 0; b < choice.size(); ++b) {
      const auto& [delta, c] = expansion[choice[b]];
      append_powers(traces, lf.loops[plain + b], delta);
      coeff *= c;
    }
    total += GaussianRational(coeff) * wick_trace_product(traces, lf.matrices, obs.n, threads);
    std::size_t pos = 0;
    while (pos < choice.size() && ++choice[pos] == expansion.size()) choice[pos++] = 0;
    if (pos == choice.size()) break;
  }
  return total;
}

// ---------------------------------------------------------------------------------------
// Monte Carlo

namespace {

using CMatrix = Eigen::MatrixXcd;
using cd = std::complex<double>;

constexpr long kBlockSize = 2048;

CMatrix to_complex(const GaussianRationalMatrix& m) {
  CMatrix out(m.size(), m.size());
  for (int r = 0; r < m.size(); ++r)
    for (int c = 0; c < m.size(); ++c) out(r, c) = cd(m(r, c).re.to_double(), m(r, c).im.to_double());
  return out;
}

CMatrix ginibre(long n, double variance, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, std::sqrt(variance / 2.0));
  CMatrix z(n, n);
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < n; ++c) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      z(r, c) = cd(re, im);
    }
  return z;
}

CMatrix haar_unitary(long n, std::mt19937_64& rng) {
  const CMatrix g = ginibre(n, 1.0, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix& r = qr.matrixQR();
  for (long j = 0; j < n; ++j) {
    const cd d = r(j, j);
    const double a = std::abs(d);
    q.col(j) *= a == 0.0 ? cd(1.0) : d / a;
  }
  return q;
}

// p_1..p_k of a matrix.
std::vector<cd> power_traces(const CMatrix& x, int k) {
  std::vector<cd> p;
  CMatrix power = x;
  for (int m = 1; m <= k; ++m) {
    if (m > 1) power = power * x;
    p.push_back(power.trace());
  }
  return p;
}

cd monomial(const std::vector<cd>& p, const Partition& delta) {
  cd v(1.0);
  for (int part : delta.parts()) v *= p[static_cast<std::size_t>(part - 1)];
  return v;
}

struct Moments {
  long count = 0;
  double mean_re = 0, m2_re = 0, mean_im = 0, m2_im = 0;

  void add(cd x) {
    ++count;
    const double dr = x.real() - mean_re;
    mean_re += dr / static_cast<double>(count);
    m2_re += dr * (x.real() - mean_re);
    const double di = x.imag() - mean_im;
    mean_im += di / static_cast<double>(count);
    m2_im += di * (x.imag() - mean_im);
  }

  void merge(const Moments& o) {
    if (o.count == 0) return;
    const double n = static_cast<double>(count + o.count);
    const double dr = o.mean_re - mean_re;
    const double di = o.mean_im - mean_im;
    m2_re += o.m2_re + dr * dr * static_cast<double>(count) * static_cast<double>(o.count) / n;
    m2_im += o.m2_im + di * di * static_cast<double>(count) * static_cast<double>(o.count) / n;
    mean_re += dr * static_cast<double>(o.count) / n;
    mean_im += di * static_cast<double>(o.count) / n;
    count += o.count;
  }
};

// Runs `sample(rng)` options.samples times in fixed-size blocks seeded from (seed, block).
template <class Sampler>
MCReport run_blocks(const MCOptions& options, const Sampler& sample) {
  if (options.samples < 2) throw InputError("Monte Carlo needs at least 2 samples");
  const long blocks = (options.samples + kBlockSize - 1) / kBlockSize;
  std::vector<Moments> results(static_cast<std::size_t>(blocks));
  std::atomic<long> next{0};
  auto worker = [&] {
    for (long b = next++; b < blocks; b = next++) {
      std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                        static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
      std::mt19937_64 rng(seq);
      const long count = std::min(kBlockSize, options.samples - b * kBlockSize);
      Moments m;
      for (long s = 0; s < count; ++s) m.add(sample(rng));
      results[static_cast<std::size_t>(b)] = m;
    }
  };
  const int threads = static_cast<int>(std::clamp<long>(options.threads, 1, blocks));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  Moments total;
  for (const auto& m : results) total.merge(m);
  const double n = static_cast<double>(total.count);
  MCReport report;
  report.estimate = cd(total.mean_re, total.mean_im);
  report.standard_error = cd(std::sqrt(total.m2_re / (n - 1) / n), std::sqrt(total.m2_im / (n - 1) / n));
  report.samples = total.count;
  report.seed = options.seed;
  return report;
}

enum class Ensemble { Ginibre, Unitary };

MCReport mc_observable(const TraceObservable& obs, const MCOptions& options, Ensemble ensemble) {
  check_observable(obs);
  const LoopFactors lf = loop_factors(obs);
  std::vector<CMatrix> sources;
  for (const auto& m : lf.matrices) sources.push_back(to_complex(m));
  const int pairs = obs.network.pairs();
  const std::size_t plain = obs.mu_list.size();

  std::vector<int> max_power(lf.loops.size(), 0);
  for (std::size_t a = 0; a < plain; ++a)
    max_power[a] = obs.mu_list[a].empty() ? 0 : obs.mu_list[a].parts().front();
  const int w = mobius_weight_of(obs);
  for (std::size_t a = plain; a < lf.loops.size(); ++a) max_power[a] = w;
  std::vector<std::pair<Partition, cd>> expansion;
  for (const auto& [delta, c] : mobius_expansion(w)) expansion.emplace_back(delta, cd(c.to_double()));

  const double variance = options.variance_scale / static_cast<double>(obs.n);
  const long n = obs.n;
  return run_blocks(options, [&](std::mt19937_64& rng) {
    std::vector<CMatrix> z, zd;
    for (int i = 0; i < pairs; ++i) {
      z.push_back(ensemble == Ensemble::Ginibre ? ginibre(n, variance, rng) : haar_unitary(n, rng));
      zd.push_back(z.back().adjoint());
    }
    cd value(1.0);
    for (std::size_t a = 0; a < lf.loops.size(); ++a) {
      CMatrix x = CMatrix::Identity(n, n);
      for (const auto& f : lf.loops[a]) {
        x = x * (f.conjugate ? zd : z)[static_cast<std::size_t>(f.pair - 1)];
        if (f.source >= 0) x = x * sources[static_cast<std::size_t>(f.source)];
      }
      const auto p = power_traces(x, max_power[a]);
      if (a < plain) {
        value *= monomial(p, obs.mu_list[a]);
      } else {
        cd s(0.0);
        for (const auto& [delta, c] : expansion) s += c * monomial(p, delta);
        value *= s;
      }
    }
    return value;
  });
}

cd schur_numeric(const Partition& lambda, const CMatrix& m) {
  const auto p = power_traces(m, lambda.weight());
  cd s(0.0);
  for (const auto& delta : enumerate_partitions(lambda.weight()))
    s += static_cast<double>(character(lambda, delta)) / z_of(delta).to_double() * monomial(p, delta);
  return s;
}

}  // namespace

bool MCReport::within(const std::complex<double>& exact, double k) const {
  const double floor = 1e-9 * std::max(1.0, std::abs(exact));
  return std::abs(estimate.real() - exact.real()) <= k * standard_error.real() + floor &&
         std::abs(estimate.imag() - exact.imag()) <= k * standard_error.imag() + floor;
}

MCReport mc_ginibre(const TraceObservable& obs, const MCOptions& options) {
  return mc_observable(obs, options, Ensemble::Ginibre);
}

MCReport mc_unitary(const TraceObservable& obs, const MCOptions& options) {
  return mc_observable(obs, options, Ensemble::Unitary);
}

LemmaKind parse_lemma_kind(const std::string& text) {
  if (text == "split_ginibre") return LemmaKind::SplitGinibre;
  if (text == "join_ginibre") return LemmaKind::JoinGinibre;
  if (text == "split_unitary") return LemmaKind::SplitUnitary;
  if (text == "join_unitary") return LemmaKind::JoinUnitary;
  throw InputError("unknown lemma kind: " + text);
}

LemmaReport lemma_check(LemmaKind kind, const Partition& lambda, const Partition& mu, const GaussianRationalMatrix& a,
                        const GaussianRationalMatrix& b, long n, const MCOptions& options) {
  if (n < 1) throw InputError("N must be >= 1");
  if (lambda.length() > n || mu.length() > n) throw InputError("partition longer than N");
  if (a.size() != n || b.size() != n) throw DimensionMismatch("lemma matrices must be N x N");
  const bool split = kind == LemmaKind::SplitGinibre || kind == LemmaKind::SplitUnitary;
  const bool unitary = kind == LemmaKind::SplitUnitary || kind == LemmaKind::JoinUnitary;

  LemmaReport report;
  const int d = lambda.weight();
  const GaussianRational prop(unitary ? schur_identity(lambda, n) : schur_p_infinity(lambda) * Rational(n).pow(d));
  if (split) {
    report.exact_rhs = schur_at(lambda, a.power_sums(d)) * schur_at(lambda, b.power_sums(d)) / prop;
  } else if (mu == lambda) {
    report.exact_rhs = schur_at(lambda, (a * b).power_sums(d)) / prop;
  }

  const std::vector<GaussianRationalMatrix> mats{a, b};
  if (!unitary) {
    report.has_wick = true;
    for (const auto& delta : enumerate_partitions(split ? d : mu.weight())) {
      const Rational c1 = Rational(character(split ? lambda : mu, delta)) / z_of(delta);
      if (c1.is_zero()) continue;
      TraceProduct first;
      if (split)
        append_powers(first, {{1, false, 1}, {1, true, 0}}, delta);  // A Z B Z† ~ (Z B)(Z† A)
      else
        append_powers(first, {{1, false, 0}}, delta);  // A Z ~ Z A
      if (split) {
        report.wick_lhs += GaussianRational(c1) * wick_trace_product(first, mats, n);
        continue;
      }
      for (const auto& delta2 : enumerate_partitions(d)) {
        const Rational c2 = Rational(character(lambda, delta2)) / z_of(delta2);
        if (c2.is_zero()) continue;
        TraceProduct traces = first;
        append_powers(traces, {{1, true, 1}}, delta2);
        report.wick_lhs += GaussianRational(c1 * c2) * wick_trace_product(traces, mats, n);
      }
    }
  }

  const CMatrix ca = to_complex(a), cb = to_complex(b);
  const double variance = options.variance_scale / static_cast<double>(n);
  report.mc = run_blocks(options, [&](std::mt19937_64& rng) {
    const CMatrix z = unitary ? haar_unitary(n, rng) : ginibre(n, variance, rng);
    const CMatrix zd = z.adjoint();
    if (split) return schur_numeric(lambda, ca * z * cb * zd);
    return schur_numeric(mu, ca * z) * schur_numeric(lambda, zd * cb);
  });
  return report;
}

}  // namespace hnet
