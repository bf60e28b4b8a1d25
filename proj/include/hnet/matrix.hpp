#pragma once

#include "hnet/characters.hpp"
#include "hnet/network.hpp"
#include "hnet/rational.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <vector>

namespace hnet {

/// Square matrix over Q(i), row-major.
class GaussianRationalMatrix {
public:
  GaussianRationalMatrix() = default;
  explicit GaussianRationalMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n * n)) {}
  /// Throws DimensionMismatch unless rows form a square.
  explicit GaussianRationalMatrix(const std::vector<std::vector<GaussianRational>>& rows);

  static GaussianRationalMatrix identity(int n);
  static GaussianRationalMatrix diagonal(const std::vector<GaussianRational>& d);

  int size() const { return n_; }
  GaussianRational& operator()(int r, int c) { return a_[static_cast<std::size_t>(r * n_ + c)]; }
  const GaussianRational& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r * n_ + c)]; }

  GaussianRational trace() const;
  GaussianRationalMatrix adjoint() const;
  /// (tr M, tr M², …, tr M^weight).
  PowerSumPoint power_sums(int weight) const;

  friend GaussianRationalMatrix operator*(const GaussianRationalMatrix& a, const GaussianRationalMatrix& b);
  friend GaussianRationalMatrix operator+(const GaussianRationalMatrix& a, const GaussianRationalMatrix& b);
  friend bool operator==(const GaussianRationalMatrix&, const GaussianRationalMatrix&) = default;

private:
  int n_ = 0;
  std::vector<GaussianRational> a_;
};

/// Source assignment: every C_i / C_i* maps to an explicit matrix, or is absent and then
/// stands for the identity.
class SourceMap {
public:
  SourceMap() = default;
  explicit SourceMap(int n) : n_(n) {}

  int dimension() const { return n_; }
  void set(const Symbol& s, GaussianRationalMatrix m);
  void set_identity(const Symbol& s) { explicit_.erase(s); }
  bool is_identity(const Symbol& s) const { return explicit_.count(s) == 0; }
  /// The matrix for `s` (identity if unassigned).
  GaussianRationalMatrix get(const Symbol& s) const;
  const std::map<Symbol, GaussianRationalMatrix>& explicit_entries() const { return explicit_; }

  /// Sources file format: {"C1": [[[re, im], …], …], "C1*": "identity", …}; rationals as
  /// integers, "p/q" strings, or [num, den] pairs. `n` fixes the matrix size.
  static SourceMap from_json(const nlohmann::json& j, int n);
  nlohmann::json to_json() const;

private:
  int n_ = 1;
  std::map<Symbol, GaussianRationalMatrix> explicit_;
};

/// C̃ for a word: the ordered product of its symbols' sources.
/// Throws DimensionMismatch if a source is not N×N.
GaussianRationalMatrix word_matrix(const Word& word, const SourceMap& sources, int n);

/// Rational JSON helpers shared by the CLI and tests.
Rational rational_from_json(const nlohmann::json& j);
nlohmann::json rational_to_json(const Rational& r);  // {"num": "…", "den": "…"}
nlohmann::json gaussian_to_json(const GaussianRational& z);  // {"re_num", "re_den", "im_num", "im_den"}

}  // namespace hnet
