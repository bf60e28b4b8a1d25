#include "hnet/errors.hpp"
#include "hnet/hurwitz.hpp"
#include "hnet/network.hpp"
#include "hnet/rmt.hpp"
#include "hnet/series.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using nlohmann::json;
using namespace hnet;

namespace {

enum Exit { kPass = 0, kFail = 1, kInput = 2, kGuard = 3 };

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(what + ": " + e.what());
  }
}

std::vector<Partition> partitions_from_json(const json& j) {
  if (!j.is_array()) throw InputError("expected a list of partitions");
  std::vector<Partition> out;
  for (const auto& p : j) {
    if (!p.is_array()) throw InputError("expected a partition as a list of parts");
    out.emplace_back(p.get<std::vector<int>>());
  }
  return out;
}

Partition partition_from_text(const std::string& text) {
  const auto j = parse_json(text, "partition");
  if (!j.is_array()) throw InputError("expected a partition as a list of parts");
  return Partition(j.get<std::vector<int>>());
}

json partition_json(const Partition& p) { return p.parts(); }

json partitions_json(const std::vector<Partition>& ps) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(partition_json(p));
  return out;
}

json complex_json(const std::complex<double>& z) { return {{"re", z.real()}, {"im", z.imag()}}; }

std::string gaussian_text(const GaussianRational& z) {
  std::ostringstream s;
  s << z;
  return s.str();
}

std::string gaussian_json_text(const json& j) {
  auto part = [&](const char* num, const char* den) {
    const auto n = j[num].get<std::string>(), d = j[den].get<std::string>();
    return d == "1" ? n : n + "/" + d;
  };
  if (j["im_num"] == "0") return part("re_num", "re_den");
  return part("re_num", "re_den") + " + (" + part("im_num", "im_den") + ")i";
}

json hurwitz_json(const Rational& r) {
  const auto j = rational_to_json(r);
  return {{"value_num", j["num"]}, {"value_den", j["den"]}};
}

SourceMap load_sources(const std::string& path, long n) {
  if (path.empty()) return SourceMap(static_cast<int>(n));
  return SourceMap::from_json(parse_json(read_file(path), path), static_cast<int>(n));
}

int default_threads() {
  if (const char* env = std::getenv("HURWITZ_THREADS")) {
    try {
      const int t = std::stoi(env);
      if (t >= 1) return t;
    } catch (const std::exception&) {
    }
  }
  return 1;
}

void emit(const json& j, const std::string& format, const std::string& text) {
  if (format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

// summary

struct SummaryArgs {
  std::string network;
};

int cmd_summary(const SummaryArgs& a, const std::string& format) {
  const auto summary = ribbon_summary(parse_network(read_file(a.network)));
  auto j = summary.to_json();
  j["genus"] = summary.genus();
  j["links"] = summary.links;
  j["genus_f_minus_1_plus_links"] = summary.faces - 1 + summary.links;
  std::ostringstream t;
  t << "F=" << summary.faces << " n=" << summary.edges << " V=" << summary.vertices << " E*=" << summary.euler
    << " g*=" << summary.genus() << " links=" << summary.links << "\n";
  for (const auto& w : summary.words) {
    for (const auto& s : w) t << s.str() << " ";
    t << "\n";
  }
  emit(j, format, t.str());
  return kPass;
}

// hurwitz

struct HurwitzArgs {
  int euler = 2;
  std::string profiles;
  std::string oracle;  // "", orientable, klein
  std::string batch;
};

json hurwitz_one(int euler, const std::vector<Partition>& profiles, const std::string& oracle, bool& agree) {
  const auto value = mednykh(euler, profiles);
  json j = hurwitz_json(value);
  j["euler"] = euler;
  j["profiles"] = partitions_json(profiles);
  if (!oracle.empty()) {
    Rational brute;
    if (oracle == "orientable") {
      if (euler % 2 != 0 || euler > 2) throw InputError("orientable base needs even E* <= 2");
      brute = brute_force_orientable((2 - euler) / 2, profiles);
    } else if (oracle == "klein") {
      if (euler > 1) throw InputError("non-orientable base needs E* <= 1");
      brute = brute_force_klein(2 - euler, profiles);
    } else {
      throw InputError("unknown oracle: " + oracle);
    }
    const auto b = rational_to_json(brute);
    j["oracle"] = {{"kind", oracle}, {"value_num", b["num"]}, {"value_den", b["den"]}, {"agrees", brute == value}};
    agree = agree && brute == value;
  }
  return j;
}

int cmd_hurwitz(const HurwitzArgs& a, const std::string& format) {
  bool agree = true;
  json out;
  std::ostringstream t;
  if (!a.batch.empty()) {
    const auto queries = parse_json(read_file(a.batch), a.batch);
    if (!queries.is_array()) throw InputError("batch file must hold a list of queries");
    out = json::array();
    for (const auto& q : queries) {
      if (!q.contains("euler") || !q.contains("profiles")) throw InputError("query needs euler and profiles");
      const auto j = hurwitz_one(q["euler"].get<int>(), partitions_from_json(q["profiles"]),
                                 q.value("oracle", a.oracle), agree);
      t << j["value_num"].get<std::string>() << "/" << j["value_den"].get<std::string>() << "\n";
      out.push_back(j);
    }
  } else {
    if (a.profiles.empty()) throw InputError("--profiles or --batch is required");
    out = hurwitz_one(a.euler, partitions_from_json(parse_json(a.profiles, "--profiles")), a.oracle, agree);
    t << out["value_num"].get<std::string>() << "/" << out["value_den"].get<std::string>() << "\n";
  }
  emit(out, format, t.str());
  return agree ? kPass : kFail;
}

// series

struct SeriesArgs {
  std::string network;
  std::string sources;
  long n = 1;
  int d = 1;
  std::string content;
  std::string faces;  // JSON list of power-sum vectors, one per power-sum face
  int mobius_faces = 0;
  std::string mu;
  std::string propagator = "ginibre";
};

ContentProductSpec content_from_json(const std::string& text) {
  ContentProductSpec spec;
  if (text.empty()) return spec;
  const auto j = parse_json(text, "--content");
  for (const auto& v : j.value("a", json::array())) spec.numerator_params.push_back(rational_from_json(v));
  for (const auto& v : j.value("b", json::array())) spec.denominator_params.push_back(rational_from_json(v));
  if (j.contains("x")) spec.shift = rational_from_json(j["x"]);
  return spec;
}

GaussianRational gaussian_from_json(const json& j) {
  if (j.is_object()) return {rational_from_json(j.at("re")), rational_from_json(j.value("im", json(0)))};
  return GaussianRational(rational_from_json(j));
}

std::vector<FaceWeight> face_weights(const SeriesArgs& a, int faces) {
  const int power_faces = faces - a.mobius_faces;
  if (a.mobius_faces < 0 || power_faces < 0) throw InputError("invalid number of Mobius faces");
  std::vector<FaceWeight> out;
  json points = json::array();
  if (!a.faces.empty()) {
    points = parse_json(a.faces, "--faces");
    if (!points.is_array() || static_cast<int>(points.size()) != power_faces)
      throw InputError("--faces needs one power-sum list per non-Mobius face");
  }
  for (int f = 0; f < power_faces; ++f) {
    std::vector<GaussianRational> values(static_cast<std::size_t>(a.d));
    if (points.empty()) {
      if (a.d > 0) values[0] = GaussianRational(1);  // p_∞
    } else {
      const auto& p = points[static_cast<std::size_t>(f)];
      for (std::size_t m = 0; m < p.size() && m < values.size(); ++m) values[m] = gaussian_from_json(p[m]);
    }
    out.push_back(FaceWeight::power_sums(PowerSumPoint(values)));
  }
  for (int f = 0; f < a.mobius_faces; ++f) out.push_back(FaceWeight::mobius());
  return out;
}

Propagator parse_propagator(const std::string& s) {
  if (s == "ginibre") return Propagator::Ginibre;
  if (s == "unitary") return Propagator::Unitary;
  throw InputError("unknown propagator: " + s);
}

int cmd_theorem1(const SeriesArgs& a, const std::string& format) {
  SchurSeriesSpec spec;
  spec.weight = a.d;
  spec.n = a.n;
  spec.summary = ribbon_summary(parse_network(read_file(a.network)));
  spec.faces = face_weights(a, spec.summary.faces);
  spec.sources = load_sources(a.sources, a.n);
  spec.content = content_from_json(a.content);
  spec.propagator = parse_propagator(a.propagator);
  const auto v = theorem1_rhs(spec);
  json j = gaussian_to_json(v.value);
  j["degree"] = v.degree;
  j["euler"] = v.euler;
  j["mobius_faces"] = v.mobius_faces;
  j["d"] = a.d;
  j["N"] = a.n;
  std::ostringstream t;
  t << gaussian_text(v.value) << "\ndegree " << v.degree << " (E*=" << v.euler << ", Mobius faces "
    << v.mobius_faces << ")\n";
  emit(j, format, t.str());
  return kPass;
}

int cmd_theorem2(const SeriesArgs& a, const std::string& format) {
  const auto summary = ribbon_summary(parse_network(read_file(a.network)));
  const auto sources = load_sources(a.sources, a.n);
  const auto mu = partitions_from_json(parse_json(a.mu, "--mu"));
  const auto hurwitz = theorem2_rhs(summary, sources, a.n, mu, a.mobius_faces);
  const auto lambda_sum = schur_series_expectation(summary, sources, a.n, mu, a.mobius_faces);
  json j = gaussian_to_json(hurwitz);
  j["schur_sum"] = gaussian_to_json(lambda_sum);
  j["agrees"] = hurwitz == lambda_sum;
  j["mu"] = partitions_json(mu);
  j["N"] = a.n;
  std::ostringstream t;
  t << gaussian_text(hurwitz) << (hurwitz == lambda_sum ? "" : "  (Schur sum disagrees: " + gaussian_text(lambda_sum) + ")")
    << "\n";
  emit(j, format, t.str());
  return hurwitz == lambda_sum ? kPass : kFail;
}

// verify

struct VerifyArgs {
  std::string network;
  std::string mu;
  std::string sources;
  long n = 1;
  int mobius_faces = 0;
  std::string mode = "wick";
  std::string battery;
  std::string ensemble = "ginibre";
  long samples = 100000;
  std::uint64_t seed = 42;
  int threads = 1;
  double variance_scale = 1.0;
};

struct VerifyCase {
  std::string label;
  std::string network_text;
  std::vector<Partition> mu;
  json sources_json;  // null: identity
  long n = 1;
  int mobius_faces = 0;
  std::string ensemble = "ginibre";
};

json verify_case(const VerifyCase& c, const VerifyArgs& a, bool& ok) {
  TraceObservable obs{parse_network(c.network_text), c.mu};
  obs.n = c.n;
  obs.sources = c.sources_json.is_null() ? SourceMap(static_cast<int>(c.n))
                                         : SourceMap::from_json(c.sources_json, static_cast<int>(c.n));
  obs.mobius_faces = c.mobius_faces;
  const auto summary = ribbon_summary(obs.network);
  const bool unitary = c.ensemble == "unitary";
  if (!unitary && c.ensemble != "ginibre") throw InputError("unknown ensemble: " + c.ensemble);

  json j;
  j["case"] = c.label;
  j["network"] = obs.network.to_dsl();
  j["mu"] = partitions_json(c.mu);
  j["N"] = c.n;
  j["ensemble"] = c.ensemble;
  j["mobius_faces"] = c.mobius_faces;
  j["sources"] = obs.sources.to_json();

  bool pass = true;
  const bool want_wick = (a.mode == "wick" || a.mode == "both") && !unitary;
  const bool want_mc = a.mode == "mc" || a.mode == "both" || unitary;
  if (a.mode != "wick" && a.mode != "mc" && a.mode != "both") throw InputError("unknown mode: " + a.mode);

  GaussianRational wick;
  if (want_wick) wick = wick_expectation(obs, a.threads);
  const auto exact = unitary ? schur_series_expectation(summary, obs.sources, c.n, c.mu, c.mobius_faces,
                                                        Propagator::Unitary)
                             : theorem2_rhs(summary, obs.sources, c.n, c.mu, c.mobius_faces);
  j["series"] = gaussian_to_json(exact);
  if (want_wick) {
    j["wick"] = gaussian_to_json(wick);
    j["exact_equal"] = wick == exact;
    pass = pass && wick == exact;
  }
  if (want_mc) {
    MCOptions options;
    options.samples = a.samples;
    options.seed = a.seed;
    options.threads = a.threads;
    options.variance_scale = a.variance_scale;
    const auto r = unitary ? mc_unitary(obs, options) : mc_ginibre(obs, options);
    const std::complex<double> target{exact.re.to_double(), exact.im.to_double()};
    const bool within = r.within(target);
    j["mc"] = {{"estimate", complex_json(r.estimate)},
               {"standard_error", complex_json(r.standard_error)},
               {"samples", r.samples},
               {"seed", r.seed},
               {"within_4_sigma", within}};
    pass = pass && within;
  }
  j["pass"] = pass;
  ok = ok && pass;
  return j;
}

std::vector<VerifyCase> load_battery(const std::string& path) {
  const auto j = parse_json(read_file(path), path);
  if (!j.is_array()) throw InputError("battery file must hold a list of cases");
  std::vector<VerifyCase> out;
  for (const auto& c : j) {
    VerifyCase v;
    v.label = c.value("name", "case " + std::to_string(out.size() + 1));
    v.network_text = c.at("network").get<std::string>();
    v.mu = partitions_from_json(c.at("mu"));
    v.n = c.value("N", 1L);
    v.mobius_faces = c.value("mobius_faces", 0);
    v.ensemble = c.value("ensemble", std::string("ginibre"));
    if (c.contains("sources")) v.sources_json = c["sources"];
    out.push_back(v);
  }
  return out;
}

int cmd_verify(const VerifyArgs& a, const std::string& format) {
  std::vector<VerifyCase> cases;
  if (!a.battery.empty()) {
    cases = load_battery(a.battery);
  } else {
    if (a.network.empty() || a.mu.empty()) throw InputError("--network and --mu (or --battery) are required");
    VerifyCase c;
    c.label = a.network;
    c.network_text = read_file(a.network);
    c.mu = partitions_from_json(parse_json(a.mu, "--mu"));
    c.n = a.n;
    c.mobius_faces = a.mobius_faces;
    c.ensemble = a.ensemble;
    if (!a.sources.empty()) c.sources_json = parse_json(read_file(a.sources), a.sources);
    cases.push_back(c);
  }

  bool ok = true;
  json results = json::array();
  json first_failure;
  std::ostringstream t;
  for (const auto& c : cases) {
    const bool before = ok;
    auto r = verify_case(c, a, ok);
    if (before && !ok) first_failure = r;
    t << (r["pass"].get<bool>() ? "PASS " : "FAIL ") << c.label;
    if (r.contains("wick")) t << "  wick=" << gaussian_json_text(r["wick"]);
    if (r.contains("mc")) {
      const auto& m = r["mc"];
      t << "  mc=(" << m["estimate"]["re"].get<double>() << ", " << m["estimate"]["im"].get<double>() << ") +/- ("
        << m["standard_error"]["re"].get<double>() << ", " << m["standard_error"]["im"].get<double>() << ")";
    }
    t << "\n";
    results.push_back(std::move(r));
  }
  json out{{"mode", a.mode}, {"cases", results}, {"pass", ok}};
  if (!ok) {
    out["first_failure"] = first_failure;
    t << "first failure:\n" << first_failure.dump(2) << "\n";
  }
  emit(out, format, t.str());
  return ok ? kPass : kFail;
}

// lemma

struct LemmaArgs {
  std::string kind = "split_ginibre";
  std::string lambda = "[1]";
  std::string mu;
  std::string sources;  // C1 → A, C2 → B
  long n = 2;
  long samples = 100000;
  std::uint64_t seed = 42;
  int threads = 1;
};

int cmd_lemma(const LemmaArgs& a, const std::string& format) {
  const auto kind = parse_lemma_kind(a.kind);
  const auto lambda = partition_from_text(a.lambda);
  const auto mu = a.mu.empty() ? lambda : partition_from_text(a.mu);
  const auto sources = load_sources(a.sources, a.n);
  const auto A = sources.get(Symbol{1, false});
  const auto B = sources.get(Symbol{2, false});
  MCOptions options;
  options.samples = a.samples;
  options.seed = a.seed;
  options.threads = a.threads;
  const auto r = lemma_check(kind, lambda, mu, A, B, a.n, options);
  const std::complex<double> target{r.exact_rhs.re.to_double(), r.exact_rhs.im.to_double()};
  bool pass = r.mc.within(target);
  json j{{"kind", a.kind},
         {"lambda", partition_json(lambda)},
         {"mu", partition_json(mu)},
         {"N", a.n},
         {"exact_rhs", gaussian_to_json(r.exact_rhs)},
         {"mc",
          {{"estimate", complex_json(r.mc.estimate)},
           {"standard_error", complex_json(r.mc.standard_error)},
           {"samples", r.mc.samples},
           {"seed", r.mc.seed},
           {"within_4_sigma", pass}}}};
  if (r.has_wick) {
    j["wick_lhs"] = gaussian_to_json(r.wick_lhs);
    j["exact_equal"] = r.wick_lhs == r.exact_rhs;
    pass = pass && r.wick_lhs == r.exact_rhs;
  }
  j["pass"] = pass;
  std::ostringstream t;
  t << (pass ? "PASS" : "FAIL") << "  rhs=" << gaussian_text(r.exact_rhs);
  if (r.has_wick) t << "  wick=" << gaussian_text(r.wick_lhs);
  t << "  mc=" << r.mc.estimate << " +/- " << r.mc.standard_error << "\n";
  emit(j, format, t.str());
  return pass ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hurwitz numbers, network ribbon graphs and matrix-model verification"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  const int threads = default_threads();

  SummaryArgs summary_args;
  auto* summary = app.add_subcommand("summary", "Ribbon-graph summary of a network file");
  summary->add_option("network,--network", summary_args.network, "Network file")->required();

  HurwitzArgs hurwitz_args;
  auto* hurwitz = app.add_subcommand("hurwitz", "Hurwitz number by the Mednykh formula");
  hurwitz->add_option("--euler", hurwitz_args.euler, "Euler characteristic of the base");
  hurwitz->add_option("--profiles", hurwitz_args.profiles, "Branch profiles, e.g. [[3],[3]]");
  hurwitz->add_option("--oracle", hurwitz_args.oracle, "Cross-check by enumeration in S_d")
      ->check(CLI::IsMember({"orientable", "klein"}));
  hurwitz->add_option("--batch", hurwitz_args.batch, "JSON file with a list of {euler, profiles} queries");

  SeriesArgs series_args;
  auto* series = app.add_subcommand("series", "Exact Schur-series values");
  series->require_subcommand(1);
  series->fallthrough();
  auto add_series_common = [&](CLI::App* sub) {
    sub->add_option("--network", series_args.network, "Network file")->required();
    sub->add_option("--sources", series_args.sources, "Sources JSON file (default: identity)");
    sub->add_option("--N", series_args.n, "Matrix size")->check(CLI::PositiveNumber);
    sub->add_option("--mobius-faces", series_args.mobius_faces, "Number of trailing Mobius faces");
  };
  auto* theorem1 = series->add_subcommand("theorem1", "Weight-d part of the Schur series");
  add_series_common(theorem1);
  theorem1->add_option("--d", series_args.d, "Weight")->check(CLI::NonNegativeNumber);
  theorem1->add_option("--content", series_args.content, R"(Content product, {"a":[...],"b":[...],"x":...})");
  theorem1->add_option("--faces", series_args.faces, "Power sums per face, [[p1,p2,...],...] (default p1=1)");
  theorem1->add_option("--propagator", series_args.propagator, "ginibre or unitary");
  auto* theorem2 = series->add_subcommand("theorem2", "Expectation by Hurwitz numbers and by the Schur sum");
  add_series_common(theorem2);
  theorem2->add_option("--mu", series_args.mu, "Partitions per face, e.g. [[1],[2]]")->required();

  VerifyArgs verify_args;
  verify_args.threads = threads;
  auto* verify = app.add_subcommand("verify", "Compare Wick, series and Monte Carlo values");
  verify->add_option("--network", verify_args.network, "Network file");
  verify->add_option("--mu", verify_args.mu, "Partitions per face");
  verify->add_option("--sources", verify_args.sources, "Sources JSON file (default: identity)");
  verify->add_option("--N", verify_args.n, "Matrix size")->check(CLI::PositiveNumber);
  verify->add_option("--mobius-faces", verify_args.mobius_faces, "Number of trailing Mobius faces");
  verify->add_option("--ensemble", verify_args.ensemble, "ginibre or unitary");
  verify->add_option("--battery", verify_args.battery, "JSON file with a list of cases");
  verify->add_option("--mode", verify_args.mode, "wick, mc or both")->check(CLI::IsMember({"wick", "mc", "both"}));
  verify->add_option("--samples", verify_args.samples, "Monte Carlo samples");
  verify->add_option("--seed", verify_args.seed, "Monte Carlo seed");
  verify->add_option("--threads", verify_args.threads, "Worker threads (default HURWITZ_THREADS or 1)")
      ->check(CLI::PositiveNumber);
  verify->add_option("--variance-scale", verify_args.variance_scale, "Test hook: scale the Ginibre entry variance");

  LemmaArgs lemma_args;
  lemma_args.threads = threads;
  auto* lemma = app.add_subcommand("lemma", "Check a split/join identity; A = C1, B = C2 from --sources");
  lemma->add_option("--kind", lemma_args.kind, "split_ginibre, join_ginibre, split_unitary or join_unitary");
  lemma->add_option("--lambda", lemma_args.lambda, "Partition, e.g. [2,1]");
  lemma->add_option("--mu", lemma_args.mu, "Second partition for join kinds (default lambda)");
  lemma->add_option("--sources", lemma_args.sources, "Sources JSON file (default: identity)");
  lemma->add_option("--N", lemma_args.n, "Matrix size")->check(CLI::PositiveNumber);
  lemma->add_option("--samples", lemma_args.samples, "Monte Carlo samples");
  lemma->add_option("--seed", lemma_args.seed, "Monte Carlo seed");
  lemma->add_option("--threads", lemma_args.threads, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInput;
  }

  try {
    if (*summary) return cmd_summary(summary_args, format);
    if (*hurwitz) return cmd_hurwitz(hurwitz_args, format);
    if (*theorem1) return cmd_theorem1(series_args, format);
    if (*theorem2) return cmd_theorem2(series_args, format);
    if (*verify) return cmd_verify(verify_args, format);
    if (*lemma) return cmd_lemma(lemma_args, format);
  } catch (const SizeGuardExceeded& e) {
    std::cerr << "resource guard: " << e.what() << "\n";
    return kGuard;
  } catch (const SyntaxError& e) {
    std::cerr << "syntax error: " << e.what() << "\n";
    return kInput;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const ArithmeticError& e) {
    std::cerr << "arithmetic error: " << e.what() << "\n";
    return kInput;
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
