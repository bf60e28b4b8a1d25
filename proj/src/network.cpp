#include "hnet/network.hpp"

#include "hnet/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hnet {

Symbol Symbol::parse(const std::string& text) {
  std::string body = text;
  Symbol s;
  if (!body.empty() && body.back() == '*') {
    s.star = true;
    body.pop_back();
  }
  if (body.size() < 2 || body[0] != 'C' ||
      !std::all_of(body.begin() + 1, body.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw InputError("bad source symbol '" + text + "'");
  s.index = std::stoi(body.substr(1));
  if (s.index < 1) throw InputError("bad source symbol '" + text + "'");
  return s;
}

Word canonical_rotation(const Word& w) {
  Word best = w;
  Word rotated = w;
  for (std::size_t i = 1; i < w.size(); ++i) {
    std::rotate(rotated.begin(), rotated.begin() + 1, rotated.end());
    if (rotated < best) best = rotated;
  }
  return best;
}

std::string word_str(const Word& w) {
  std::string s;
  for (const auto& sym : w) s += sym.str();
  return s;
}

// ---------------------------------------------------------------------------------------
// Network construction

namespace {

class DisjointSets {
public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

private:
  std::vector<std::size_t> parent_;
};

}  // namespace

ChordNetwork ChordNetwork::from_darts(const std::vector<std::vector<Dart>>& loops) {
  std::map<Dart, std::size_t> loop_of;
  int max_pair = 0;
  for (std::size_t l = 0; l < loops.size(); ++l) {
    if (loops[l].empty()) throw InputError("loop X" + std::to_string(l + 1) + " is empty");
    for (const auto& d : loops[l]) {
      if (d.pair < 1) throw InputError("pair indices start at 1");
      if (!loop_of.emplace(d, l).second)
        throw DuplicateDart("dart z" + std::to_string(d.pair) + (d.conjugate ? "'" : "") +
                            " appears more than once");
      max_pair = std::max(max_pair, d.pair);
    }
  }
  for (int i = 1; i <= max_pair; ++i) {
    const bool plain = loop_of.count({i, false}) > 0;
    const bool conj = loop_of.count({i, true}) > 0;
    if (plain != conj)
      throw MissingPartner("dart z" + std::to_string(i) + (plain ? "" : "'") + " has no partner z" +
                           std::to_string(i) + (plain ? "'" : ""));
    if (!plain) throw MissingPartner("pair " + std::to_string(i) + " is absent; pairs must be numbered 1..n");
  }
  if (loops.empty()) throw InputError("network has no loops");

  DisjointSets sets(loops.size());
  for (int i = 1; i <= max_pair; ++i) sets.unite(loop_of[{i, false}], loop_of[{i, true}]);
  for (std::size_t l = 1; l < loops.size(); ++l)
    if (sets.find(l) != sets.find(0))
      throw DisconnectedNetwork("loop X" + std::to_string(l + 1) + " is not connected to X1");

  ChordNetwork net;
  net.n_ = max_pair;
  for (const auto& loop : loops) {
    Loop arcs;
    for (const auto& d : loop) {
      arcs.push_back(Arc::black(d.pair, d.conjugate));
      arcs.push_back(Arc::white(d.pair, d.conjugate));
    }
    net.loops_.push_back(std::move(arcs));
  }
  return net;
}

std::vector<int> ChordNetwork::remaining_pairs() const {
  std::set<int> pairs;
  for (const auto& loop : loops_)
    for (const auto& a : loop)
      if (a.is_black()) pairs.insert(a.pair);
  return {pairs.begin(), pairs.end()};
}

std::vector<std::vector<Dart>> ChordNetwork::darts() const {
  std::vector<std::vector<Dart>> out;
  for (const auto& loop : loops_) {
    std::vector<Dart> ds;
    for (const auto& a : loop)
      if (a.is_black()) ds.push_back({a.pair, a.conjugate});
    out.push_back(std::move(ds));
  }
  return out;
}

std::string ChordNetwork::to_dsl() const {
  std::ostringstream os;
  const auto ds = darts();
  for (std::size_t l = 0; l < ds.size(); ++l) {
    os << "X" << (l + 1) << ":";
    for (const auto& d : ds[l]) os << " z" << d.pair << (d.conjugate ? "'" : "");
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------------------
// DSL

ChordNetwork parse_network(const std::string& text) {
  std::vector<std::vector<Dart>> loops;
  int line_no = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t pos = 0;
    auto skip_ws = [&] {
      while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    };
    auto col = [&] { return static_cast<int>(pos) + 1; };
    auto read_int = [&](const char* what) {
      const std::size_t start = pos;
      while (pos < line.size() && line[pos] >= '0' && line[pos] <= '9') ++pos;
      if (start == pos) throw SyntaxError(std::string("expected ") + what, line_no, static_cast<int>(start) + 1);
      if (pos - start > 6) throw SyntaxError("index too large", line_no, static_cast<int>(start) + 1);
      return std::stoi(line.substr(start, pos - start));
    };

    skip_ws();
    if (pos == line.size()) continue;
    if (line[pos] != 'X') throw SyntaxError("expected loop name X<k>", line_no, col());
    ++pos;
    const int name_col = col();
    const int k = read_int("loop number after 'X'");
    if (k != static_cast<int>(loops.size()) + 1)
      throw SyntaxError("loop X" + std::to_string(k) + " out of order; expected X" +
                            std::to_string(loops.size() + 1),
                        line_no, name_col);
    skip_ws();
    if (pos == line.size() || line[pos] != ':') throw SyntaxError("expected ':'", line_no, col());
    ++pos;

    std::vector<Dart> loop;
    for (;;) {
      skip_ws();
      if (pos == line.size()) break;
      if (line[pos] != 'z') throw SyntaxError("expected token z<i> or z<i>'", line_no, col());
      ++pos;
      const int pair = read_int("pair index after 'z'");
      if (pair < 1) throw SyntaxError("pair index must be >= 1", line_no, col() - 1);
      bool conj = false;
      if (pos < line.size() && line[pos] == '\'') {
        conj = true;
        ++pos;
      }
      if (pos < line.size() && line[pos] != ' ' && line[pos] != '\t')
        throw SyntaxError("unexpected character '" + std::string(1, line[pos]) + "'", line_no, col());
      loop.push_back({pair, conj});
    }
    if (loop.empty()) throw SyntaxError("loop X" + std::to_string(k) + " has no darts", line_no, col());
    loops.push_back(std::move(loop));
  }
  if (loops.empty()) throw SyntaxError("no loops defined", line_no == 0 ? 1 : line_no, 1);
  return ChordNetwork::from_darts(loops);
}

// ---------------------------------------------------------------------------------------
// Cutting and joining

ChordNetwork contract(const ChordNetwork& network, int pair_index) {
  std::ptrdiff_t loop_a = -1, loop_b = -1;
  std::size_t pos_a = 0, pos_b = 0;
  const auto& loops = network.loops_;
  for (std::size_t l = 0; l < loops.size(); ++l)
    for (std::size_t i = 0; i < loops[l].size(); ++i) {
      const Arc& arc = loops[l][i];
      if (!arc.is_black() || arc.pair != pair_index) continue;
      if (arc.conjugate) {
        loop_b = static_cast<std::ptrdiff_t>(l);
        pos_b = i;
      } else {
        loop_a = static_cast<std::ptrdiff_t>(l);
        pos_a = i;
      }
    }
  if (loop_a < 0 || loop_b < 0) throw UnknownPair("pair " + std::to_string(pair_index) + " is not present");

  // Arcs strictly after `from` up to (not including) `to`, cyclically within one loop.
  auto segment = [](const ChordNetwork::Loop& loop, std::size_t from, std::size_t to) {
    ChordNetwork::Loop out;
    for (std::size_t i = (from + 1) % loop.size(); i != to; i = (i + 1) % loop.size()) out.push_back(loop[i]);
    return out;
  };

  ChordNetwork out = network;
  const auto la = static_cast<std::size_t>(loop_a);
  const auto lb = static_cast<std::size_t>(loop_b);
  if (la == lb) {
    // Chord: [a S1 b S2] -> (S1), (S2).
    auto first = segment(loops[la], pos_a, pos_b);
    auto second = segment(loops[la], pos_b, pos_a);
    out.loops_[la] = std::move(first);
    out.loops_.insert(out.loops_.begin() + static_cast<std::ptrdiff_t>(la) + 1, std::move(second));
    ++out.chords_;
  } else {
    // Link: [a S1], [b S2] -> (S1 S2).
    auto merged = segment(loops[la], pos_a, pos_a);
    auto tail = segment(loops[lb], pos_b, pos_b);
    merged.insert(merged.end(), tail.begin(), tail.end());
    const std::size_t keep = std::min(la, lb), drop = std::max(la, lb);
    out.loops_[keep] = std::move(merged);
    out.loops_.erase(out.loops_.begin() + static_cast<std::ptrdiff_t>(drop));
    ++out.links_;
  }
  return out;
}

ChordNetwork contract_all(const ChordNetwork& network, const std::vector<int>& order) {
  ChordNetwork current = network;
  for (int pair : order) current = contract(current, pair);
  return current;
}

std::vector<Word> vertex_words(const ChordNetwork& fully_contracted) {
  std::vector<Word> words;
  for (const auto& loop : fully_contracted.loops()) {
    Word w;
    for (const auto& arc : loop) {
      if (arc.is_black()) throw std::logic_error("vertex_words: network still has uncontracted pairs");
      w.push_back(arc.symbol());
    }
    words.push_back(canonical_rotation(w));
  }
  std::sort(words.begin(), words.end());
  return words;
}

std::vector<Word> permutation_vertex_words(const ChordNetwork& network) {
  // Index darts; the label trailing dart (i, c) is the symbol (i, c).
  std::vector<Dart> darts;
  std::vector<std::size_t> next;  // σ
  for (const auto& loop : network.darts()) {
    const std::size_t base = darts.size();
    for (std::size_t i = 0; i < loop.size(); ++i) {
      darts.push_back(loop[i]);
      next.push_back(base + (i + 1) % loop.size());
    }
  }
  std::map<Dart, std::size_t> index;
  for (std::size_t i = 0; i < darts.size(); ++i) index[darts[i]] = i;
  auto partner = [&](std::size_t d) { return index.at({darts[d].pair, !darts[d].conjugate}); };  // α

  std::vector<bool> seen(darts.size(), false);
  std::vector<Word> words;
  for (std::size_t start = 0; start < darts.size(); ++start) {
    if (seen[start]) continue;
    Word w;
    for (std::size_t d = start; !seen[d]; d = partner(next[d])) {
      seen[d] = true;
      w.push_back({darts[d].pair, darts[d].conjugate});
    }
    words.push_back(canonical_rotation(w));
  }
  std::sort(words.begin(), words.end());
  return words;
}

RibbonGraphSummary ribbon_summary(const ChordNetwork& network) {
  const auto pairs = network.remaining_pairs();
  const ChordNetwork done = contract_all(network, pairs);
  RibbonGraphSummary s;
  s.faces = network.faces();
  s.edges = static_cast<int>(pairs.size());
  s.vertices = done.faces();
  s.euler = s.faces - s.edges + s.vertices;
  s.links = done.links_contracted() - network.links_contracted();
  s.words = vertex_words(done);

  const auto perm_words = permutation_vertex_words(network);
  if (perm_words != s.words)
    throw std::logic_error("ribbon_summary: contraction and permutation model disagree");
  return s;
}

nlohmann::json RibbonGraphSummary::to_json() const {
  nlohmann::json ws = nlohmann::json::array();
  for (const auto& w : words) {
    nlohmann::json word = nlohmann::json::array();
    for (const auto& s : w) word.push_back(s.str());
    ws.push_back(word);
  }
  return {{"F", faces}, {"n", edges}, {"V", vertices}, {"euler", euler}, {"words", ws}};
}

namespace {

struct OrderOutcome {
  int vertices;
  std::vector<Word> words;
  friend bool operator==(const OrderOutcome&, const OrderOutcome&) = default;
};

OrderOutcome outcome(const ChordNetwork& network, const std::vector<int>& order) {
  const ChordNetwork done = contract_all(network, order);
  return {done.faces(), vertex_words(done)};
}

}  // namespace

bool verify_order_independence(const ChordNetwork& network, int trials, std::uint64_t seed) {
  if (trials < 1) throw InputError("trials must be >= 1");
  std::vector<int> order = network.remaining_pairs();
  const OrderOutcome reference = outcome(network, order);
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    std::shuffle(order.begin(), order.end(), rng);
    if (!(outcome(network, order) == reference)) return false;
  }
  return true;
}

bool verify_all_orders(const ChordNetwork& network) {
  std::vector<int> order = network.remaining_pairs();
  const OrderOutcome reference = outcome(network, order);
  while (std::next_permutation(order.begin(), order.end()))
    if (!(outcome(network, order) == reference)) return false;
  return true;
}

}  // namespace hnet
