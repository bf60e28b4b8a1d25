#pragma once

#include "hnet/errors.hpp"
#include "hnet/matrix.hpp"
#include "hnet/network.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace support {

using hnet::ChordNetwork;
using hnet::Dart;

inline ChordNetwork net(const std::string& text) { return hnet::parse_network(text); }

// z1 z2 … zn zn' … z1'
inline std::string nested_network(int n) {
  std::string s = "X1:";
  for (int i = 1; i <= n; ++i) s += " z" + std::to_string(i);
  for (int i = n; i >= 1; --i) s += " z" + std::to_string(i) + "'";
  return s;
}

// (z1 z1')(z2 z2')…
inline std::string star_network(int n) {
  std::string s = "X1:";
  for (int i = 1; i <= n; ++i) s += " z" + std::to_string(i) + " z" + std::to_string(i) + "'";
  return s;
}

// X1 = z1…zn, X2 = zn'…z1'
inline std::string two_face_network(int n) {
  std::string s = "X1:";
  for (int i = 1; i <= n; ++i) s += " z" + std::to_string(i);
  s += "\nX2:";
  for (int i = n; i >= 1; --i) s += " z" + std::to_string(i) + "'";
  return s;
}

// X_a = z_a z_{a+1}', X_n = z_n z_1'
inline std::string closed_chain_network(int n) {
  std::string s;
  for (int a = 1; a <= n; ++a) {
    const int b = a == n ? 1 : a + 1;
    s += "X" + std::to_string(a) + ": z" + std::to_string(a) + " z" + std::to_string(b) + "'\n";
  }
  return s;
}

// Loops rotated to start at their least dart, loops sorted: one representative per network.
inline std::vector<std::vector<Dart>> canonical_loops(std::vector<std::vector<Dart>> loops) {
  for (auto& l : loops) std::rotate(l.begin(), std::min_element(l.begin(), l.end()), l.end());
  std::sort(loops.begin(), loops.end());
  return loops;
}

inline bool connected(const std::vector<std::vector<Dart>>& loops) {
  try {
    (void)ChordNetwork::from_darts(loops);
    return true;
  } catch (const hnet::DisconnectedNetwork&) {
    return false;
  }
}

// Every connected network on n pairs with exactly F loops, up to rotating and reordering loops.
inline std::vector<ChordNetwork> all_networks(int n, int faces) {
  std::vector<Dart> darts;
  for (int i = 1; i <= n; ++i) {
    darts.push_back({i, false});
    darts.push_back({i, true});
  }
  std::set<std::vector<std::vector<Dart>>> seen;
  std::vector<ChordNetwork> out;
  const int m = 2 * n;
  // Loop sizes: compositions of 2n into F positive parts.
  std::vector<std::vector<int>> compositions;
  std::vector<int> sizes;
  auto compose = [&](auto& self, int left, int slots) -> void {
    if (slots == 0) {
      if (left == 0) compositions.push_back(sizes);
      return;
    }
    for (int s = 1; s <= left - (slots - 1); ++s) {
      sizes.push_back(s);
      self(self, left - s, slots - 1);
      sizes.pop_back();
    }
  };
  compose(compose, m, faces);
  std::sort(darts.begin(), darts.end());
  do {
    for (const auto& comp : compositions) {
      std::vector<std::vector<Dart>> loops;
      std::size_t pos = 0;
      for (int s : comp) {
        loops.emplace_back(darts.begin() + static_cast<std::ptrdiff_t>(pos),
                           darts.begin() + static_cast<std::ptrdiff_t>(pos + static_cast<std::size_t>(s)));
        pos += static_cast<std::size_t>(s);
      }
      auto canon = canonical_loops(loops);
      if (!seen.insert(canon).second) continue;
      if (connected(canon)) out.push_back(ChordNetwork::from_darts(canon));
    }
  } while (std::next_permutation(darts.begin(), darts.end()));
  return out;
}

// Uniformly shuffled darts cut into F nonempty loops, redrawn until connected (needs F ≤ n + 1).
inline ChordNetwork random_network(int n, int faces, std::mt19937_64& rng) {
  if (faces < 1 || faces > n + 1) throw hnet::InputError("no connected network with these sizes");
  std::vector<Dart> darts;
  for (int i = 1; i <= n; ++i) {
    darts.push_back({i, false});
    darts.push_back({i, true});
  }
  while (true) {
    std::shuffle(darts.begin(), darts.end(), rng);
    std::vector<int> cuts(darts.size() - 1);
    std::iota(cuts.begin(), cuts.end(), 1);
    std::shuffle(cuts.begin(), cuts.end(), rng);
    cuts.resize(static_cast<std::size_t>(faces - 1));
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(static_cast<int>(darts.size()));
    std::vector<std::vector<Dart>> loops;
    int start = 0;
    for (int c : cuts) {
      loops.emplace_back(darts.begin() + start, darts.begin() + c);
      start = c;
    }
    if (connected(loops)) return ChordNetwork::from_darts(loops);
  }
}

inline hnet::Rational random_rational(std::mt19937_64& rng, int span = 3, int max_den = 3) {
  std::uniform_int_distribution<int> num(-span, span);
  std::uniform_int_distribution<int> den(1, max_den);
  return hnet::Rational(num(rng)) / hnet::Rational(den(rng));
}

inline hnet::GaussianRational random_gaussian(std::mt19937_64& rng) {
  return {random_rational(rng), random_rational(rng)};
}

inline hnet::GaussianRationalMatrix random_matrix(int n, std::mt19937_64& rng) {
  hnet::GaussianRationalMatrix m(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = random_gaussian(rng);
  return m;
}

// Every C_i and C_i* of the network gets a random N×N Gaussian-rational matrix.
inline hnet::SourceMap random_sources(const ChordNetwork& network, int n, std::mt19937_64& rng) {
  hnet::SourceMap sources(n);
  for (int i = 1; i <= network.pairs(); ++i) {
    sources.set({i, false}, random_matrix(n, rng));
    sources.set({i, true}, random_matrix(n, rng));
  }
  return sources;
}

// All lists of `count` partitions of d.
inline std::vector<std::vector<hnet::Partition>> all_mu_lists(int d, int count) {
  const auto parts = hnet::enumerate_partitions(d);
  std::vector<std::vector<hnet::Partition>> out{{}};
  for (int c = 0; c < count; ++c) {
    std::vector<std::vector<hnet::Partition>> next;
    for (const auto& prefix : out)
      for (const auto& p : parts) {
        auto l = prefix;
        l.push_back(p);
        next.push_back(std::move(l));
      }
    out = std::move(next);
  }
  return out;
}

inline std::string mu_str(const std::vector<hnet::Partition>& mu) {
  std::string s = "[";
  for (std::size_t i = 0; i < mu.size(); ++i) s += (i ? "," : "") + mu[i].str();
  return s + "]";
}

}  // namespace support
