#include "hnet/series.hpp"

#include "hnet/errors.hpp"
#include "hnet/hurwitz.hpp"

#include <cmath>
#include <functional>

namespace hnet {

namespace {

int mobius_count(const std::vector<FaceWeight>& faces) {
  int e = 0;
  for (const auto& f : faces) e += f.is_mobius() ? 1 : 0;
  return e;
}

GaussianRational propagator_value(Propagator kind, const Partition& lambda, long n) {
  if (kind == Propagator::Unitary) return GaussianRational(schur_identity(lambda, n));
  return GaussianRational(schur_p_infinity(lambda) * Rational(n).pow(lambda.weight()));
}

// Power sums of every vertex matrix, truncated at d.
std::vector<PowerSumPoint> vertex_points(const RibbonGraphSummary& summary, const SourceMap& sources, long n,
                                         int d) {
  std::vector<PowerSumPoint> out;
  for (const auto& m : vertex_matrices(summary, sources, n)) out.push_back(m.power_sums(d));
  return out;
}

void check_spec(const SchurSeriesSpec& spec) {
  if (spec.weight < 0) throw InputError("weight d must be >= 0");
  if (spec.n < 1) throw InputError("N must be >= 1");
  if (static_cast<int>(spec.faces.size()) != spec.summary.faces)
    throw InputError("expected " + std::to_string(spec.summary.faces) + " face weights, got " +
                     std::to_string(spec.faces.size()));
}

GaussianRational term_with_points(const SchurSeriesSpec& spec, const Partition& lambda,
                                  const std::vector<PowerSumPoint>& face_points,
                                  const std::vector<PowerSumPoint>& vertices) {
  if (lambda.length() > spec.n) return {};
  GaussianRational term(rational_content_weight(spec.content, lambda));
  if (term.is_zero()) return term;
  for (const auto& p : face_points) {
    term *= schur_at(lambda, p);
    if (term.is_zero()) return term;
  }
  for (const auto& p : vertices) {
    term *= schur_at(lambda, p);
    if (term.is_zero()) return term;
  }
  return term * propagator_value(spec.propagator, lambda, spec.n).pow(-spec.summary.edges);
}

std::vector<PowerSumPoint> scaled_faces(const SchurSeriesSpec& spec) {
  std::vector<PowerSumPoint> out;
  for (const auto& f : spec.faces)
    if (!f.is_mobius()) out.push_back(f.p.scaled(GaussianRational(spec.n)));
  return out;
}

int check_mu_list(const RibbonGraphSummary& summary, const std::vector<Partition>& mu_list, int mobius_faces) {
  if (mobius_faces < 0 || mobius_faces > summary.faces) throw InputError("invalid number of Mobius faces");
  if (static_cast<int>(mu_list.size()) + mobius_faces != summary.faces)
    throw InputError("mu list has " + std::to_string(mu_list.size()) + " entries for " +
                     std::to_string(summary.faces - mobius_faces) + " power-sum faces");
  return common_weight(mu_list);
}

}  // namespace

std::vector<GaussianRationalMatrix> vertex_matrices(const RibbonGraphSummary& summary, const SourceMap& sources,
                                                    long n) {
  std::vector<GaussianRationalMatrix> out;
  out.reserve(summary.words.size());
  for (const auto& w : summary.words) out.push_back(word_matrix(w, sources, static_cast<int>(n)));
  return out;
}

GaussianRational theorem1_term(const SchurSeriesSpec& spec, const Partition& lambda) {
  check_spec(spec);
  if (lambda.weight() != spec.weight) throw WeightMismatch("lambda " + lambda.str() + " is not of weight d");
  return term_with_points(spec, lambda, scaled_faces(spec), vertex_points(spec.summary, spec.sources, spec.n, spec.weight));
}

SeriesValue theorem1_rhs(const SchurSeriesSpec& spec) {
  check_spec(spec);
  SeriesValue out;
  out.mobius_faces = mobius_count(spec.faces);
  out.degree = spec.summary.faces - out.mobius_faces - spec.summary.edges + spec.summary.vertices;
  out.euler = spec.summary.euler;

  const auto faces = scaled_faces(spec);
  const auto vertices = vertex_points(spec.summary, spec.sources, spec.n, spec.weight);
  for (const auto& lambda : enumerate_partitions(spec.weight, static_cast<int>(std::min<long>(spec.n, spec.weight))))
    out.value += term_with_points(spec, lambda, faces, vertices);
  return out;
}

GaussianRational theorem2_rhs(const RibbonGraphSummary& summary, const SourceMap& sources, long n,
                              const std::vector<Partition>& mu_list, int mobius_faces) {
  const int d = check_mu_list(summary, mu_list, mobius_faces);
  const auto vertices = vertex_points(summary, sources, n, d);
  const auto parts = enumerate_partitions(d);
  const int V = static_cast<int>(vertices.size());

  const double tuples = std::pow(static_cast<double>(parts.size()), V);
  if (tuples > 1e7) throw SizeGuardExceeded("theorem2_rhs: Delta tuples", tuples);

  // p_Δ(C̃_v) for every vertex and class
  std::vector<std::vector<GaussianRational>> monomials(static_cast<std::size_t>(V));
  for (int v = 0; v < V; ++v)
    for (const auto& delta : parts) monomials[static_cast<std::size_t>(v)].push_back(vertices[static_cast<std::size_t>(v)].monomial(delta));

  const int euler = static_cast<int>(mu_list.size()) - summary.edges + V;
  std::vector<Partition> profiles = mu_list;
  GaussianRational total;
  std::function<void(int, const GaussianRational&)> rec = [&](int v, const GaussianRational& weight) {
    if (v == V) {
      total += weight * GaussianRational(mednykh(euler, profiles));
      return;
    }
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const GaussianRational& m = monomials[static_cast<std::size_t>(v)][i];
      if (m.is_zero()) continue;
      profiles.push_back(parts[i]);
      rec(v + 1, weight * m);
      profiles.pop_back();
    }
  };
  rec(0, GaussianRational(1));

  Rational prefactor = Rational(n).pow(-static_cast<long>(summary.edges) * d);
  for (const auto& mu : mu_list) prefactor *= z_of(mu);
  return total * GaussianRational(prefactor);
}

GaussianRational schur_series_expectation(const RibbonGraphSummary& summary, const SourceMap& sources, long n,
                                          const std::vector<Partition>& mu_list, int mobius_faces,
                                          Propagator propagator) {
  const int d = check_mu_list(summary, mu_list, mobius_faces);
  const auto vertices = vertex_points(summary, sources, n, d);
  GaussianRational total;
  for (const auto& lambda : enumerate_partitions(d, static_cast<int>(std::min<long>(n, d)))) {
    GaussianRational term(1);
    for (const auto& mu : mu_list) term *= GaussianRational(character(lambda, mu));
    if (term.is_zero()) continue;
    for (const auto& p : vertices) {
      term *= schur_at(lambda, p);
      if (term.is_zero()) break;
    }
    if (term.is_zero()) continue;
    total += term * propagator_value(propagator, lambda, n).pow(-summary.edges);
  }
  return total;
}

GaussianRational expect_traces_formula(const RibbonGraphSummary& summary, const SourceMap& sources, long n) {
  GaussianRational value(Rational(n).pow(-summary.edges));
  for (const auto& m : vertex_matrices(summary, sources, n)) value *= m.trace();
  return value;
}

std::vector<GaussianRational> tau_hyp_truncated(const ContentProductSpec& content, const PowerSumPoint& p,
                                                const PowerSumPoint& p_star, int d_max) {
  std::vector<GaussianRational> out;
  for (int w = 0; w <= d_max; ++w) {
    GaussianRational c;
    for (const auto& lambda : enumerate_partitions(w)) {
      const Rational r = rational_content_weight(content, lambda);
      if (r.is_zero()) continue;
      c += GaussianRational(r) * schur_at(lambda, p) * schur_at(lambda, p_star);
    }
    out.push_back(c);
  }
  return out;
}

std::vector<GaussianRational> tau_B_truncated(std::optional<int> max_length, const ContentProductSpec& content,
                                              const PowerSumPoint& p, int d_max) {
  std::vector<GaussianRational> out;
  for (int w = 0; w <= d_max; ++w) {
    GaussianRational c;
    const auto parts = max_length ? enumerate_partitions(w, *max_length) : enumerate_partitions(w);
    for (const auto& lambda : parts) {
      const Rational r = rational_content_weight(content, lambda);
      if (r.is_zero()) continue;
      c += GaussianRational(r) * schur_at(lambda, p);
    }
    out.push_back(c);
  }
  return out;
}

PowerSumPoint miwa_specialize(const std::vector<std::pair<Rational, GaussianRational>>& params, int weight) {
  std::vector<GaussianRational> values(static_cast<std::size_t>(std::max(weight, 0)));
  for (const auto& [d, x] : params) {
    GaussianRational power = x;
    for (int m = 1; m <= weight; ++m) {
      values[static_cast<std::size_t>(m - 1)] -= GaussianRational(d) * power;
      power *= x;
    }
  }
  return PowerSumPoint(std::move(values));
}

BetaWeights beta_weights(const SchurSeriesSpec& spec) {
  check_spec(spec);
  BetaWeights out;
  out.vandermonde_exponent =
      spec.summary.faces - mobius_count(spec.faces) - spec.summary.edges + spec.summary.vertices;
  const auto faces = scaled_faces(spec);
  const auto vertices = vertex_points(spec.summary, spec.sources, spec.n, spec.weight);
  const int n = static_cast<int>(spec.n);
  for (const auto& lambda : enumerate_partitions(spec.weight, std::min(n, spec.weight))) {
    BetaConfiguration c;
    c.lambda = lambda;
    for (int i = 1; i <= n; ++i)
      c.shifted_parts.push_back(lambda.part_or_zero(static_cast<std::size_t>(i - 1)) - i + n);
    c.weight = term_with_points(spec, lambda, faces, vertices);
    out.configurations.push_back(std::move(c));
  }
  return out;
}

}  // namespace hnet
