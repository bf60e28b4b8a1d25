#include "hnet/errors.hpp"
#include "hnet/series.hpp"

#include "support.hpp"

#include <doctest.h>

#include <map>

using namespace hnet;
using support::net;

namespace {

using GR = GaussianRational;

Rational q(long a, long b = 1) { return Rational(a) / Rational(b); }
GR g(long a, long b = 1) { return GR(q(a, b)); }

PowerSumPoint point(const std::vector<GR>& v) { return PowerSumPoint(v); }

// p₁ = 1, higher power sums 0, truncated at `weight`.
PowerSumPoint p_infinity(int weight) {
  std::vector<GR> v(static_cast<std::size_t>(weight), GR(0));
  if (weight > 0) v[0] = GR(1);
  return PowerSumPoint(v);
}

PowerSumPoint random_point(int weight, std::mt19937_64& rng) {
  std::vector<GR> v;
  for (int m = 0; m < weight; ++m) v.push_back(support::random_gaussian(rng));
  return PowerSumPoint(v);
}

// Power sums of the eigenvalue list xs.
PowerSumPoint eigen_point(const std::vector<GR>& xs, int weight) {
  std::vector<GR> v;
  for (int m = 1; m <= weight; ++m) {
    GR s;
    for (const auto& x : xs) s += x.pow(m);
    v.push_back(s);
  }
  return PowerSumPoint(v);
}

SchurSeriesSpec spec_for(const std::string& network, long n, int d, std::vector<FaceWeight> faces) {
  SchurSeriesSpec spec;
  spec.weight = d;
  spec.n = n;
  spec.summary = ribbon_summary(net(network));
  spec.faces = std::move(faces);
  spec.sources = SourceMap(static_cast<int>(n));
  return spec;
}

// Graded coefficients of ∏ 1/(1 − t_k), t_k carrying weight w_k.
std::vector<GR> geometric_product(const std::vector<std::pair<GR, int>>& factors, int d_max) {
  std::vector<GR> c(static_cast<std::size_t>(d_max + 1));
  c[0] = GR(1);
  for (const auto& [t, w] : factors) {
    std::vector<GR> next(c.size());
    for (int i = 0; i <= d_max; ++i)
      for (int k = 0; i + k * w <= d_max; ++k)
        next[static_cast<std::size_t>(i + k * w)] += c[static_cast<std::size_t>(i)] * t.pow(k);
    c = next;
  }
  return c;
}

// Graded coefficients of exp(Σ_m a_m / m), a_m of weight m.
std::vector<GR> exp_series(const std::vector<GR>& a, int d_max) {
  std::vector<GR> c(static_cast<std::size_t>(d_max + 1));
  c[0] = GR(1);
  // d·c_d = Σ_{m=1}^{d} a_m c_{d−m}
  for (int d = 1; d <= d_max; ++d) {
    GR s;
    for (int m = 1; m <= d; ++m) s += a[static_cast<std::size_t>(m - 1)] * c[static_cast<std::size_t>(d - m)];
    c[static_cast<std::size_t>(d)] = s * GR(q(1, d));
  }
  return c;
}

}  // namespace

TEST_CASE("word matrices") {
  const auto i3 = word_matrix({Symbol::parse("C1")}, SourceMap(3), 3);
  CHECK(i3 == GaussianRationalMatrix::identity(3));

  SourceMap s(2);
  s.set(Symbol::parse("C1"), GaussianRationalMatrix::diagonal({g(1), g(2)}));
  s.set(Symbol::parse("C1*"), GaussianRationalMatrix::diagonal({g(1), g(3)}));
  CHECK(word_matrix({Symbol::parse("C1"), Symbol::parse("C1*")}, s, 2) ==
        GaussianRationalMatrix::diagonal({g(1), g(6)}));

  std::mt19937_64 rng(3);
  const auto network = net("X1: z1 z2 z1' z2'");
  const auto sources = support::random_sources(network, 2, rng);
  Word w;
  for (const char* sym : {"C2", "C1", "C2*", "C1*"}) w.push_back(Symbol::parse(sym));
  const auto expected = sources.get(w[0]) * sources.get(w[1]) * sources.get(w[2]) * sources.get(w[3]);
  CHECK(word_matrix(w, sources, 2) == expected);

  CHECK_THROWS_AS(word_matrix(w, sources, 3), DimensionMismatch);
}

TEST_CASE("Schur series at fixed weight") {
  for (long n : {1L, 2L, 3L, 5L}) {
    auto spec = spec_for("X1: z1 z1'", n, 1, {FaceWeight::power_sums(p_infinity(1))});
    const auto v = theorem1_rhs(spec);
    CHECK(v.value == GR(q(n * n)));
    CHECK(v.degree == 2);
    CHECK(v.euler == 2);
    CHECK(v.mobius_faces == 0);

    spec.weight = 0;
    spec.faces = {FaceWeight::power_sums(p_infinity(0))};
    CHECK(theorem1_rhs(spec).value == GR(1));
  }

  // Two faces, one Möbius: λ = (1) gives N^{-1} · N p₁ · N, with p₁ = 1.
  for (long n : {1L, 2L, 4L}) {
    const auto spec = spec_for("X1: z1\nX2: z1'", n, 1,
                               {FaceWeight::power_sums(p_infinity(1)), FaceWeight::mobius()});
    const auto v = theorem1_rhs(spec);
    CHECK(v.value == GR(q(n)));
    CHECK(v.mobius_faces == 1);
    CHECK(v.degree == v.euler - 1);
  }

  // Length cap: at N = 1 only one-row partitions contribute.
  std::mt19937_64 rng(11);
  auto spec = spec_for("X1: z1 z2 z1' z2'", 1, 3, {FaceWeight::power_sums(random_point(3, rng))});
  GR manual;
  for (const auto& lambda : enumerate_partitions(3)) {
    if (lambda.length() > 1) CHECK(theorem1_term(spec, lambda).is_zero());
    manual += theorem1_term(spec, lambda);
  }
  CHECK(theorem1_rhs(spec).value == manual);

  auto bad = spec;
  bad.faces.push_back(FaceWeight::mobius());
  CHECK_THROWS_AS(theorem1_rhs(bad), InputError);

  auto singular = spec;
  singular.content.denominator_params = {Rational(-1)};
  CHECK_THROWS_AS(theorem1_rhs(singular), ZeroDenominatorContent);
}

TEST_CASE("content weights multiply each term") {
  std::mt19937_64 rng(12);
  auto spec = spec_for(support::nested_network(2), 3, 3, {FaceWeight::power_sums(random_point(3, rng))});
  spec.sources = support::random_sources(net(support::nested_network(2)), 3, rng);
  auto weighted = spec;
  weighted.content.numerator_params = {q(5, 2)};
  weighted.content.denominator_params = {q(-7, 3)};
  weighted.content.shift = q(1, 2);
  for (const auto& lambda : enumerate_partitions(3))
    CHECK(theorem1_term(weighted, lambda) ==
          theorem1_term(spec, lambda) * GR(rational_content_weight(weighted.content, lambda)));
}

TEST_CASE("Hurwitz expansion and closed forms") {
  for (long n : {1L, 2L, 3L, 7L}) {
    const auto trivial = ribbon_summary(net("X1: z1 z1'"));
    CHECK(theorem2_rhs(trivial, SourceMap(static_cast<int>(n)), n, {{1}}) == GR(q(n)));
    CHECK(expect_traces_formula(trivial, SourceMap(static_cast<int>(n)), n) == GR(q(n)));
    const auto torus = ribbon_summary(net("X1: z1 z2 z1' z2'"));
    CHECK(theorem2_rhs(torus, SourceMap(static_cast<int>(n)), n, {{1}}) == GR(q(1, n)));
    CHECK(expect_traces_formula(torus, SourceMap(static_cast<int>(n)), n) == GR(q(1, n)));
  }
  SourceMap s(2);
  s.set(Symbol::parse("C1"), GaussianRationalMatrix::diagonal({g(1), g(2)}));
  CHECK(theorem2_rhs(ribbon_summary(net("X1: z1 z1'")), s, 2, {{1}}) == g(3));
  CHECK(expect_traces_formula(ribbon_summary(net("X1: z1 z2'\nX2: z2 z1'")), SourceMap(2), 2) == g(1));
  CHECK(expect_traces_formula(ribbon_summary(net("X1: z1 z2 z1' z2'")), SourceMap(3), 3) == g(1, 3));

  const auto torus = ribbon_summary(net("X1: z1 z2 z1' z2'"));
  CHECK_THROWS_AS(theorem2_rhs(torus, SourceMap(2), 2, {{2}, {1}}), InputError);
  const auto chain = ribbon_summary(net("X1: z1 z2'\nX2: z2 z1'"));
  CHECK_THROWS_AS(theorem2_rhs(chain, SourceMap(2), 2, {{2}, {1}}), WeightMismatch);

  // All μᵃ = (1) reduces to N^{-n} ∏ tr C̃.
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const int pairs = 1 + static_cast<int>(rng() % 3);
    const int faces = 1 + static_cast<int>(rng() % std::min(3, pairs + 1));
    const auto network = support::random_network(pairs, faces, rng);
    const long n = 1 + static_cast<long>(rng() % 3);
    const auto sources = support::random_sources(network, static_cast<int>(n), rng);
    const auto summary = ribbon_summary(network);
    const std::vector<Partition> ones(static_cast<std::size_t>(faces), Partition{1});
    const auto expected = expect_traces_formula(summary, sources, n);
    CHECK(theorem2_rhs(summary, sources, n, ones) == expected);

    // Closed form by hand: N^{-n} ∏ tr of the word products.
    GR direct = GR(Rational(1) / Rational(n).pow(pairs));
    for (const auto& w : summary.words) direct *= word_matrix(w, sources, static_cast<int>(n)).trace();
    CHECK(expected == direct);
  }
}

TEST_CASE("character map consistency") {
  std::mt19937_64 rng(31);
  for (int pairs = 1; pairs <= 2; ++pairs)
    for (int faces = 1; faces <= 2; ++faces)
      for (const auto& network : support::all_networks(pairs, faces)) {
        const auto summary = ribbon_summary(network);
        for (long n : {1L, 2L, 3L}) {
          const auto sources = support::random_sources(network, static_cast<int>(n), rng);
          for (int d = 1; d <= 3; ++d) {
            // Hurwitz expansion equals the λ-sum.
            std::map<std::vector<Partition>, GR> coefficient;
            for (const auto& mu : support::all_mu_lists(d, faces)) {
              const auto lhs = theorem2_rhs(summary, sources, n, mu);
              CHECK_MESSAGE(lhs == schur_series_expectation(summary, sources, n, mu), support::mu_str(mu));
              coefficient[mu] = lhs;
            }
            // Regrouping the Schur series by the face monomials p_{μᵃ} gives the same numbers.
            std::vector<FaceWeight> weights;
            std::vector<PowerSumPoint> points;
            for (int a = 0; a < faces; ++a) {
              points.push_back(random_point(d, rng));
              weights.push_back(FaceWeight::power_sums(points.back()));
            }
            SchurSeriesSpec spec;
            spec.weight = d;
            spec.n = n;
            spec.summary = summary;
            spec.faces = weights;
            spec.sources = sources;
            GR regrouped;
            for (const auto& [mu, value] : coefficient) {
              GR term = value;
              for (int a = 0; a < faces; ++a) {
                const auto& m = mu[static_cast<std::size_t>(a)];
                term *= points[static_cast<std::size_t>(a)].monomial(m) *
                        GR(Rational(n).pow(m.length()) / z_of(m));
              }
              regrouped += term;
            }
            CHECK(theorem1_rhs(spec).value == regrouped);
          }
        }
      }
}

TEST_CASE("Mobius faces in the Hurwitz route") {
  std::mt19937_64 rng(41);
  for (const auto& network : support::all_networks(2, 2)) {
    const auto summary = ribbon_summary(network);
    for (long n : {2L, 3L}) {
      const auto sources = support::random_sources(network, static_cast<int>(n), rng);
      for (int d = 1; d <= 3; ++d)
        for (const auto& mu : support::all_mu_lists(d, 1))
          CHECK(theorem2_rhs(summary, sources, n, mu, 1) == schur_series_expectation(summary, sources, n, mu, 1));
    }
  }
  // d = 1 expansion by hand: the Möbius loop carries s_(1) = p₁, so it is E[tr X₁ tr X₂].
  const auto chain = ribbon_summary(net("X1: z1 z2'\nX2: z2 z1'"));
  CHECK(theorem2_rhs(chain, SourceMap(3), 3, {{1}}, 1) == theorem2_rhs(chain, SourceMap(3), 3, {{1}, {1}}));
}

TEST_CASE("degree bookkeeping") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 40; ++trial) {
    const int pairs = 1 + static_cast<int>(rng() % 6);
    const int faces = 1 + static_cast<int>(rng() % std::min(3, pairs + 1));
    const auto network = support::random_network(pairs, faces, rng);
    SchurSeriesSpec spec;
    spec.weight = 0;
    spec.n = 2;
    spec.summary = ribbon_summary(network);
    spec.sources = SourceMap(2);
    for (int a = 0; a < faces; ++a) spec.faces.push_back(FaceWeight::power_sums(p_infinity(0)));
    const auto v = theorem1_rhs(spec);
    CHECK(v.degree == spec.summary.faces - spec.summary.edges + spec.summary.vertices);
    CHECK(v.degree == v.euler);
    for (int e = 1; e <= faces; ++e) {
      spec.faces[static_cast<std::size_t>(e - 1)] = FaceWeight::mobius();
      CHECK(theorem1_rhs(spec).degree == v.degree - e);
    }
  }
}

TEST_CASE("first-order expansion of the exponential") {
  // At d = 1 with p₁ = 1 on every face, the series is N^F E[∏ tr X_a].
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const int pairs = 1 + static_cast<int>(rng() % 3);
    const int faces = 1 + static_cast<int>(rng() % std::min(3, pairs + 1));
    const auto network = support::random_network(pairs, faces, rng);
    const long n = 1 + static_cast<long>(rng() % 3);
    SchurSeriesSpec spec;
    spec.weight = 1;
    spec.n = n;
    spec.summary = ribbon_summary(network);
    spec.sources = support::random_sources(network, static_cast<int>(n), rng);
    for (int a = 0; a < faces; ++a) spec.faces.push_back(FaceWeight::power_sums(p_infinity(1)));
    CHECK(theorem1_rhs(spec).value ==
          GR(Rational(n).pow(faces)) * expect_traces_formula(spec.summary, spec.sources, n));
  }
}

TEST_CASE("tau truncations") {
  ContentProductSpec one;
  const auto hyp = tau_hyp_truncated(one, p_infinity(6), p_infinity(6), 6);
  REQUIRE(hyp.size() == 7);
  for (int d = 0; d <= 6; ++d) {
    CHECK(hyp[static_cast<std::size_t>(d)] == GR(Rational(1) / Rational(factorial(static_cast<unsigned>(d)), 1)));
    Rational direct;
    for (const auto& lambda : enumerate_partitions(d)) direct += schur_p_infinity(lambda) * schur_p_infinity(lambda);
    CHECK(hyp[static_cast<std::size_t>(d)] == GR(direct));
  }
  CHECK(tau_hyp_truncated(one, p_infinity(0), p_infinity(0), 0) == std::vector<GR>{GR(1)});

  // Cauchy–Littlewood: Σ s_λ(p) s_λ(p*) = exp Σ p_m p*_m / m.
  std::mt19937_64 rng(71);
  const auto p = random_point(5, rng), ps = random_point(5, rng);
  std::vector<GR> prod;
  for (int m = 1; m <= 5; ++m) prod.push_back(p.p(m) * ps.p(m));
  CHECK(tau_hyp_truncated(one, p, ps, 5) == exp_series(prod, 5));

  ContentProductSpec zero;
  zero.numerator_params = {Rational(0)};
  const auto z = tau_hyp_truncated(zero, p, ps, 4);
  CHECK(z[0] == GR(1));
  for (int d = 1; d <= 4; ++d) CHECK(z[static_cast<std::size_t>(d)].is_zero());

  const auto x = g(1, 3);
  CHECK(tau_B_truncated(std::nullopt, one, eigen_point({x}, 3), 3) ==
        std::vector<GR>{GR(1), x, x.pow(2), x.pow(3)});

  const auto m0 = tau_B_truncated(0, one, p, 4);
  CHECK(m0 == std::vector<GR>{GR(1), GR(0), GR(0), GR(0), GR(0)});

  // ∏ 1/(1 − x_i) ∏_{i<j} 1/(1 − x_i x_j) for up to three eigenvalues.
  for (int k = 1; k <= 3; ++k) {
    std::vector<GR> xs;
    for (int i = 0; i < k; ++i) xs.push_back(support::random_gaussian(rng));
    std::vector<std::pair<GR, int>> factors;
    for (int i = 0; i < k; ++i) factors.push_back({xs[static_cast<std::size_t>(i)], 1});
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        factors.push_back({xs[static_cast<std::size_t>(i)] * xs[static_cast<std::size_t>(j)], 2});
    CHECK(tau_B_truncated(std::nullopt, one, eigen_point(xs, 6), 6) == geometric_product(factors, 6));
    // With k eigenvalues, only ℓ(λ) ≤ k survive, so the cap M = k changes nothing.
    CHECK(tau_B_truncated(k, one, eigen_point(xs, 6), 6) == geometric_product(factors, 6));
  }
}

TEST_CASE("Miwa specialization") {
  const GR a{q(2), q(-1)};
  const auto p = miwa_specialize({{Rational(1), a}}, 3);
  CHECK(p == point({-a, -a.pow(2), -a.pow(3)}));
  CHECK(miwa_specialize({}, 3) == PowerSumPoint::zero(3));
  CHECK(schur_at({2}, miwa_specialize({{Rational(1), a}}, 2)).is_zero());
  CHECK(schur_at({1, 1}, miwa_specialize({{Rational(1), a}}, 2)) == a.pow(2));

  // N Σ d_i = 3: every λ with λ₁ > 3 vanishes.
  const long n = 2;
  const auto base = miwa_specialize({{Rational(1), g(3)}, {q(1, 2), GR{q(1, 2), q(1)}}}, 6);
  const auto scaled = base.scaled(GR(q(n)));
  for (int d = 1; d <= 6; ++d)
    for (const auto& lambda : enumerate_partitions(d))
      if (lambda.part_or_zero(0) > 3) CHECK(schur_at(lambda, scaled).is_zero());
  CHECK_FALSE(schur_at({3, 3}, scaled).is_zero());
}

TEST_CASE("beta ensemble weights") {
  std::mt19937_64 rng(81);
  const auto face = FaceWeight::power_sums(random_point(3, rng));

  const auto n1 = spec_for("X1: z1 z1'", 1, 3, {face});
  const auto b1 = beta_weights(n1);
  REQUIRE(b1.configurations.size() == 1);
  CHECK(b1.configurations[0].shifted_parts == std::vector<int>{3});
  CHECK(b1.configurations[0].weight == theorem1_term(n1, {3}));
  CHECK(b1.vandermonde_exponent == theorem1_rhs(n1).degree);

  const auto n2 = spec_for("X1: z1 z1'", 2, 1, {FaceWeight::power_sums(p_infinity(1))});
  const auto b2 = beta_weights(n2);
  REQUIRE(b2.configurations.size() == 1);
  CHECK(b2.configurations[0].shifted_parts == std::vector<int>{2, 0});
  CHECK(b2.configurations[0].lambda == Partition{1});

  const auto n3 = spec_for("X1: z1 z1'", 3, 3, {face});
  const auto b3 = beta_weights(n3);
  CHECK(b3.configurations.size() == 3);
  GR total;
  for (const auto& c : b3.configurations) {
    CHECK(c.weight == theorem1_term(n3, c.lambda));
    for (std::size_t i = 0; i < c.shifted_parts.size(); ++i)
      CHECK(c.shifted_parts[i] == c.lambda.part_or_zero(static_cast<int>(i)) - static_cast<int>(i) - 1 + 3);
    total += c.weight;
  }
  CHECK(total == theorem1_rhs(n3).value);
}
