#include "hnet/matrix.hpp"

#include "hnet/errors.hpp"

namespace hnet {

GaussianRationalMatrix::GaussianRationalMatrix(const std::vector<std::vector<GaussianRational>>& rows)
    : n_(static_cast<int>(rows.size())), a_() {
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != n_) throw DimensionMismatch("source matrix is not square");
    a_.insert(a_.end(), r.begin(), r.end());
  }
}

GaussianRationalMatrix GaussianRationalMatrix::identity(int n) {
  GaussianRationalMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = GaussianRational(1);
  return m;
}

GaussianRationalMatrix GaussianRationalMatrix::diagonal(const std::vector<GaussianRational>& d) {
  GaussianRationalMatrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.size(); ++i) m(i, i) = d[static_cast<std::size_t>(i)];
  return m;
}

GaussianRational GaussianRationalMatrix::trace() const {
  GaussianRational t;
  for (int i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

GaussianRationalMatrix GaussianRationalMatrix::adjoint() const {
  GaussianRationalMatrix m(n_);
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c) m(c, r) = (*this)(r, c).conj();
  return m;
}

PowerSumPoint GaussianRationalMatrix::power_sums(int weight) const {
  std::vector<GaussianRational> p;
  if (weight <= 0) return PowerSumPoint(std::move(p));
  GaussianRationalMatrix power = *this;
  p.push_back(power.trace());
  for (int m = 2; m <= weight; ++m) {
    power = power * *this;
    p.push_back(power.trace());
  }
  return PowerSumPoint(std::move(p));
}

GaussianRationalMatrix operator*(const GaussianRationalMatrix& a, const GaussianRationalMatrix& b) {
  if (a.n_ != b.n_) throw DimensionMismatch("matrix product of different sizes");
  GaussianRationalMatrix m(a.n_);
  for (int r = 0; r < a.n_; ++r)
    for (int k = 0; k < a.n_; ++k) {
      const GaussianRational& x = a(r, k);
      if (x.is_zero()) continue;
      for (int c = 0; c < a.n_; ++c)
        if (!b(k, c).is_zero()) m(r, c) += x * b(k, c);
    }
  return m;
}

GaussianRationalMatrix operator+(const GaussianRationalMatrix& a, const GaussianRationalMatrix& b) {
  if (a.n_ != b.n_) throw DimensionMismatch("matrix sum of different sizes");
  GaussianRationalMatrix m = a;
  for (std::size_t i = 0; i < m.a_.size(); ++i) m.a_[i] += b.a_[i];
  return m;
}

void SourceMap::set(const Symbol& s, GaussianRationalMatrix m) {
  if (m.size() != n_)
    throw DimensionMismatch("source " + s.str() + " is " + std::to_string(m.size()) + "x" +
                            std::to_string(m.size()) + ", expected " + std::to_string(n_) + "x" +
                            std::to_string(n_));
  explicit_[s] = std::move(m);
}

GaussianRationalMatrix SourceMap::get(const Symbol& s) const {
  auto it = explicit_.find(s);
  return it == explicit_.end() ? GaussianRationalMatrix::identity(n_) : it->second;
}

GaussianRationalMatrix word_matrix(const Word& word, const SourceMap& sources, int n) {
  if (sources.dimension() != n)
    throw DimensionMismatch("sources are " + std::to_string(sources.dimension()) + "x" +
                            std::to_string(sources.dimension()) + ", expected N = " + std::to_string(n));
  GaussianRationalMatrix m = GaussianRationalMatrix::identity(n);
  for (const auto& s : word)
    if (!sources.is_identity(s)) m = m * sources.get(s);
  return m;
}

// ---------------------------------------------------------------------------------------
// JSON

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_array() && j.size() == 2) {
    auto part = [](const nlohmann::json& x) {
      if (x.is_number_integer()) return std::to_string(x.get<long>());
      if (x.is_string()) return x.get<std::string>();
      throw InputError("rational component must be an integer or decimal string");
    };
    return Rational::from_strings(part(j[0]), part(j[1]));
  }
  throw InputError("cannot read a rational from " + j.dump());
}

nlohmann::json rational_to_json(const Rational& r) { return {{"num", r.num().get_str()}, {"den", r.den().get_str()}}; }

nlohmann::json gaussian_to_json(const GaussianRational& z) {
  return {{"re_num", z.re.num().get_str()},
          {"re_den", z.re.den().get_str()},
          {"im_num", z.im.num().get_str()},
          {"im_den", z.im.den().get_str()}};
}

namespace {

// Entry: [re, im] with each part an integer, "p/q" string or [num, den]; a bare rational is real.
GaussianRational entry_from_json(const nlohmann::json& j) {
  if (j.is_array()) {
    if (j.size() != 2) throw InputError("matrix entry must be [re, im]: " + j.dump());
    return {rational_from_json(j[0]), rational_from_json(j[1])};
  }
  return GaussianRational(rational_from_json(j));
}

}  // namespace

SourceMap SourceMap::from_json(const nlohmann::json& j, int n) {
  if (!j.is_object()) throw InputError("sources file must be a JSON object");
  SourceMap map(n);
  for (const auto& [key, value] : j.items()) {
    const Symbol s = Symbol::parse(key);
    if (value.is_string()) {
      if (value.get<std::string>() != "identity") throw InputError("unknown source keyword for " + key);
      map.set_identity(s);
      continue;
    }
    if (!value.is_array()) throw InputError("source " + key + " must be a matrix or \"identity\"");
    std::vector<std::vector<GaussianRational>> rows;
    for (const auto& row : value) {
      if (!row.is_array()) throw InputError("source " + key + ": rows must be arrays");
      std::vector<GaussianRational> r;
      for (const auto& e : row) r.push_back(entry_from_json(e));
      rows.push_back(std::move(r));
    }
    map.set(s, GaussianRationalMatrix(rows));
  }
  return map;
}

nlohmann::json SourceMap::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [s, m] : explicit_) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < m.size(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < m.size(); ++c) row.push_back({m(r, c).re.str(), m(r, c).im.str()});
      rows.push_back(row);
    }
    j[s.str()] = rows;
  }
  return j;
}

}  // namespace hnet
