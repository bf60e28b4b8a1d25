#include "hnet/hurwitz.hpp"

#include "hnet/characters.hpp"
#include "hnet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

namespace hnet {

int common_weight(const std::vector<Partition>& profiles) {
  if (profiles.empty()) throw InputError("at least one ramification profile is required");
  const int d = profiles.front().weight();
  for (const auto& p : profiles)
    if (p.weight() != d) throw WeightMismatch("profiles " + profiles.front().str() + " and " + p.str() +
                                              " have different weights");
  if (d < 1) throw InputError("cover degree d must be >= 1");
  return d;
}

Rational mednykh(const HurwitzQuery& q) {
  const int d = common_weight(q.profiles);
  const Rational d_fact(factorial(static_cast<unsigned>(d)), 1);
  Rational total;
  for (const auto& lambda : enumerate_partitions(d)) {
    Rational term = (Rational(dimension(lambda)) / d_fact).pow(q.euler_base);
    for (const auto& delta : q.profiles) {
      term *= phi(lambda, delta);
      if (term.is_zero()) break;
    }
    total += term;
  }
  return total;
}

int riemann_hurwitz_cover_euler(int euler_base, const std::vector<Partition>& profiles) {
  const int d = common_weight(profiles);
  int e = d * euler_base;
  for (const auto& p : profiles) e -= d - p.length();
  return e;
}

// ---------------------------------------------------------------------------------------
// Brute-force oracles over S_d

namespace {

using Perm = std::vector<std::uint8_t>;

Perm compose(const Perm& a, const Perm& b) {  // (a·b)(x) = a(b(x))
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
  return r;
}

Perm inverse(const Perm& a) {
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<std::uint8_t>(i);
  return r;
}

Partition cycle_type(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  std::vector<int> parts;
  for (std::size_t s = 0; s < p.size(); ++s) {
    if (seen[s]) continue;
    int len = 0;
    for (std::size_t x = s; !seen[x]; x = p[x]) {
      seen[x] = true;
      ++len;
    }
    parts.push_back(len);
  }
  return Partition(std::move(parts));
}

struct SymmetricGroup {
  std::vector<Perm> elements;
  std::vector<Partition> types;

  explicit SymmetricGroup(int d) {
    Perm p(static_cast<std::size_t>(d));
    std::iota(p.begin(), p.end(), 0);
    do {
      elements.push_back(p);
      types.push_back(cycle_type(p));
    } while (std::next_permutation(p.begin(), p.end()));
  }

  std::vector<const Perm*> members(const Partition& type) const {
    std::vector<const Perm*> out;
    for (std::size_t i = 0; i < elements.size(); ++i)
      if (types[i] == type) out.push_back(&elements[i]);
    return out;
  }
};

// Representative of C_Δ: consecutive cycles.
Perm class_representative(const Partition& delta) {
  Perm p(static_cast<std::size_t>(delta.weight()));
  std::size_t start = 0;
  for (int part : delta.parts()) {
    for (int i = 0; i < part; ++i)
      p[start + static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(start + static_cast<std::size_t>((i + 1) % part));
    start += static_cast<std::size_t>(part);
  }
  return p;
}

void guard(int d, int free_factors, const char* what) {
  const double cost = std::pow(std::tgamma(d + 1.0), free_factors);
  if (cost > kBruteForceBudget) {
    std::ostringstream os;
    os << what << ": estimated " << cost << " states exceeds budget " << kBruteForceBudget;
    throw SizeGuardExceeded(os.str(), cost);
  }
}

// Counts solutions of A_1⋯A_k · W(free) = 1 with A_1 fixed to a class representative and the
// count multiplied by |C_{Δ¹}|. `word` maps the vector of free group elements to W.
Rational count_solutions(const std::vector<Partition>& profiles, int free_elements,
                         const std::function<Perm(const std::vector<const Perm*>&)>& word) {
  const int d = common_weight(profiles);
  const SymmetricGroup group(d);
  const Perm a1 = class_representative(profiles.front());
  const std::size_t k = profiles.size();

  // Variables: A_2..A_{k-1} drawn from their classes, free elements from all of S_d;
  // A_k (k ≥ 2) is solved for and checked.
  std::vector<std::vector<const Perm*>> domains;
  for (std::size_t i = 1; i + 1 < k; ++i) domains.push_back(group.members(profiles[i]));
  std::vector<const Perm*> all;
  for (const auto& e : group.elements) all.push_back(&e);
  for (int j = 0; j < free_elements; ++j) domains.push_back(all);

  const std::size_t n_classes = k >= 2 ? k - 2 : 0;
  mpz_class count = 0;
  std::vector<const Perm*> choice(domains.size());
  std::function<void(std::size_t)> rec = [&](std::size_t level) {
    if (level == domains.size()) {
      Perm prefix = a1;
      for (std::size_t i = 0; i < n_classes; ++i) prefix = compose(prefix, *choice[i]);
      const std::vector<const Perm*> free(choice.begin() + static_cast<std::ptrdiff_t>(n_classes), choice.end());
      const Perm w = word(free);
      if (k >= 2) {
        // prefix·A_k·W = 1
        const Perm ak = compose(inverse(prefix), inverse(w));
        if (cycle_type(ak) == profiles.back()) ++count;
      } else {
        const Perm total = compose(prefix, w);
        if (cycle_type(total).length() == d) ++count;
      }
      return;
    }
    for (const Perm* p : domains[level]) {
      choice[level] = p;
      rec(level + 1);
    }
  };
  rec(0);
  count *= class_size(profiles.front());
  return Rational(count, factorial(static_cast<unsigned>(d)));
}

}  // namespace

Rational brute_force_orientable(int g_star, const std::vector<Partition>& profiles) {
  if (g_star < 0) throw InputError("orientable genus must be >= 0");
  const int d = common_weight(profiles);
  guard(d, static_cast<int>(profiles.size()) - 1 + 2 * g_star, "brute_force_orientable");
  return count_solutions(profiles, 2 * g_star, [&](const std::vector<const Perm*>& free) {
    Perm w(static_cast<std::size_t>(d));
    std::iota(w.begin(), w.end(), 0);
    for (int j = 0; j < g_star; ++j) {
      const Perm& a = *free[static_cast<std::size_t>(2 * j)];
      const Perm& b = *free[static_cast<std::size_t>(2 * j + 1)];
      w = compose(w, compose(compose(a, b), compose(inverse(a), inverse(b))));
    }
    return w;
  });
}

Rational brute_force_klein(int g_slash, const std::vector<Partition>& profiles) {
  if (g_slash < 1) throw InputError("non-orientable genus must be >= 1");
  const int d = common_weight(profiles);
  guard(d, static_cast<int>(profiles.size()) - 1 + g_slash, "brute_force_klein");
  return count_solutions(profiles, g_slash, [&](const std::vector<const Perm*>& free) {
    Perm w(static_cast<std::size_t>(d));
    std::iota(w.begin(), w.end(), 0);
    for (const Perm* r : free) w = compose(w, compose(*r, *r));
    return w;
  });
}

// ---------------------------------------------------------------------------------------

AggregateResult aggregate(int euler_base, const std::vector<Partition>& fixed_profiles, int total_points,
                          int euler_cover) {
  const int d = common_weight(fixed_profiles);
  const int m = static_cast<int>(fixed_profiles.size());
  const int k = total_points - m;
  if (k < 0) throw InputError("total_points must be at least the number of fixed profiles");

  int fixed_len = 0;
  for (const auto& p : fixed_profiles) fixed_len += p.length();
  const int target = euler_cover - d * (euler_base - k - m) - fixed_len;  // required Σℓ(Δ)

  const auto parts = enumerate_partitions(d);
  AggregateResult result;
  std::vector<Partition> profiles = fixed_profiles;
  std::function<void(int, int)> rec = [&](int slot, int length_left) {
    if (slot == k) {
      if (length_left != 0) return;
      result.value += mednykh(euler_base, profiles);
      ++result.tuples;
      return;
    }
    for (const auto& delta : parts) {
      if (delta.length() > length_left) continue;
      profiles.push_back(delta);
      rec(slot + 1, length_left - delta.length());
      profiles.pop_back();
    }
  };
  if (target >= k && target <= k * d) rec(0, target);
  result.feasible = result.tuples > 0;
  return result;
}

DegreeLowering degree_lowering_check(int euler_base, const std::vector<Partition>& profiles) {
  const int d = common_weight(profiles);
  DegreeLowering out;
  out.lhs = mednykh(euler_base - 1, profiles);
  std::vector<Partition> extended = profiles;
  for (const auto& delta : enumerate_partitions(d)) {
    const Rational chi = chi_sqrt(delta);
    if (chi.is_zero()) continue;
    extended.push_back(delta);
    out.rhs += mednykh(euler_base, extended) * chi;
    extended.pop_back();
  }
  return out;
}

}  // namespace hnet
