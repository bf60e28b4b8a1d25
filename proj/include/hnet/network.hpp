#pragma once

#include <json.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace hnet {

/// Source symbol C_i (star = false) or C_i* (star = true).
struct Symbol {
  int index = 0;
  bool star = false;

  std::string str() const { return "C" + std::to_string(index) + (star ? "*" : ""); }
  /// Parses "C3" / "C3*".
  static Symbol parse(const std::string& text);

  friend bool operator==(const Symbol&, const Symbol&) = default;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

/// A cyclic word over the source alphabet.
using Word = std::vector<Symbol>;

/// Lexicographically least rotation.
Word canonical_rotation(const Word& w);
std::string word_str(const Word& w);

/// One arc of a loop. Black arcs carry Z_i (conjugate = false) or Z_i† (conjugate = true);
/// white arcs carry the source symbol that trails a black arc.
struct Arc {
  enum class Kind : std::uint8_t { Black, White };
  Kind kind = Kind::Black;
  int pair = 0;
  bool conjugate = false;

  static Arc black(int pair, bool conjugate) { return {Kind::Black, pair, conjugate}; }
  static Arc white(int pair, bool conjugate) { return {Kind::White, pair, conjugate}; }
  bool is_black() const { return kind == Kind::Black; }
  Symbol symbol() const { return {pair, conjugate}; }

  friend bool operator==(const Arc&, const Arc&) = default;
};

/// A dart is a black arc: Dart(i, false) is Z_i C_i, Dart(i, true) is Z_i† C_i*.
struct Dart {
  int pair = 0;
  bool conjugate = false;
  friend bool operator==(const Dart&, const Dart&) = default;
  friend auto operator<=>(const Dart&, const Dart&) = default;
};

/// F cyclic loops of arcs. A freshly parsed network alternates black and white arcs
/// (each black arc followed by its own white label); contraction removes black pairs and
/// leaves the labels in place.
class ChordNetwork {
public:
  using Loop = std::vector<Arc>;

  /// Builds a network from loops of darts, each followed by its label. Validates pairing and
  /// connectivity (DuplicateDart, MissingPartner, DisconnectedNetwork).
  static ChordNetwork from_darts(const std::vector<std::vector<Dart>>& loops);

  const std::vector<Loop>& loops() const { return loops_; }
  int faces() const { return static_cast<int>(loops_.size()); }
  /// Pairs in the original network.
  int pairs() const { return n_; }
  /// Pairs not yet contracted, ascending.
  std::vector<int> remaining_pairs() const;
  /// Number of link contractions performed so far.
  int links_contracted() const { return links_; }
  int chords_contracted() const { return chords_; }

  /// Darts of each loop in order (white arcs dropped).
  std::vector<std::vector<Dart>> darts() const;

  /// DSL form, one loop per line. Only valid before any contraction.
  std::string to_dsl() const;

private:
  friend ChordNetwork contract(const ChordNetwork&, int);
  std::vector<Loop> loops_;
  int n_ = 0;
  int links_ = 0;
  int chords_ = 0;
};

/// Parses the network DSL:
///   X1: z1 z2 z1' z2'   # comment
/// One loop per line named X1..XF in order; z<i> is Z_i C_i, z<i>' is Z_i† C_i*.
ChordNetwork parse_network(const std::string& text);

/// Contracts pair `pair_index`. Both darts on one loop (a chord): the loop splits in two.
/// On two loops (a link): they merge. Cyclic order of all remaining arcs is preserved.
/// Throws UnknownPair.
ChordNetwork contract(const ChordNetwork& network, int pair_index);

/// Contracts every pair in the given order.
ChordNetwork contract_all(const ChordNetwork& network, const std::vector<int>& order);

struct RibbonGraphSummary {
  int faces = 0;     // F
  int edges = 0;     // n
  int vertices = 0;  // V
  int euler = 0;     // F − n + V
  int links = 0;     // link contractions, g̃*
  std::vector<Word> words;  // canonical rotations, sorted

  /// g* with euler = 2 − 2g*, i.e. links − F + 1.
  int genus() const { return links - faces + 1; }

  nlohmann::json to_json() const;
  friend bool operator==(const RibbonGraphSummary&, const RibbonGraphSummary&) = default;
};

/// Vertex words after all contractions have been performed, canonicalized and sorted.
std::vector<Word> vertex_words(const ChordNetwork& fully_contracted);

/// Vertex cycles of the composite dart permutation: σ moves to the next dart of the same
/// loop, α swaps a dart with its partner, and a vertex is a cycle of d ↦ α(σ(d)); the label
/// read at d is the one trailing d.
std::vector<Word> permutation_vertex_words(const ChordNetwork& network);

/// Summary by contraction in ascending pair order, cross-checked against the permutation
/// model. A disagreement is an internal error (std::logic_error).
RibbonGraphSummary ribbon_summary(const ChordNetwork& network);

/// True iff `trials` uniformly random contraction orders all give the same V and the same
/// multiset of cyclic words.
bool verify_order_independence(const ChordNetwork& network, int trials, std::uint64_t seed);

/// Same check over all n! orders.
bool verify_all_orders(const ChordNetwork& network);

}  // namespace hnet
