#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_set>
#include <vector>

#include "bonds.hpp"
#include "gap.hpp"
#include "parallel.hpp"
#include "permutation.hpp"

namespace permpat {

/// Injective 64-bit encoding of a permutation of length <= 15.
///
/// Nibble i (from the least significant end) holds p_{i+1} - 1 and the top
/// nibble holds n, so permutations of different lengths never collide.
struct PatternKey {
  static constexpr int max_length = 15;

  std::uint64_t value = 0;

  friend bool operator==(PatternKey, PatternKey) = default;
  friend auto operator<=>(PatternKey, PatternKey) = default;
};

inline void check_keyable(int n) {
  if (n > PatternKey::max_length) {
    throw Infeasible("pattern enumeration supports permutations of length <= " +
                     std::to_string(PatternKey::max_length) + " (got " + std::to_string(n) + ")");
  }
}

inline PatternKey encode(const Permutation& p) {
  check_keyable(p.size());
  std::uint64_t v = static_cast<std::uint64_t>(p.size()) << 60;
  for (int i = 0; i < p.size(); ++i) {
    v |= static_cast<std::uint64_t>(p(i + 1) - 1) << (4 * i);
  }
  return PatternKey{v};
}

inline Permutation decode(PatternKey key) {
  const int n = static_cast<int>(key.value >> 60);
  std::vector<int> e(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) e[i] = static_cast<int>((key.value >> (4 * i)) & 0xF) + 1;
  return Permutation::from_trusted(std::move(e));
}

struct PatternKeyHash {
  std::size_t operator()(PatternKey k) const noexcept {
    // splitmix64 finalizer
    std::uint64_t z = k.value + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return static_cast<std::size_t>(z ^ (z >> 31));
  }
};

/// Distinct permutations stored by PatternKey; iteration order is unspecified.
class PatternSet {
 public:
  bool insert(const Permutation& p) { return keys_.insert(encode(p)).second; }
  bool insert(PatternKey k) { return keys_.insert(k).second; }
  bool contains(const Permutation& p) const { return keys_.contains(encode(p)); }
  std::size_t size() const { return keys_.size(); }
  bool empty() const { return keys_.empty(); }

  const std::unordered_set<PatternKey, PatternKeyHash>& keys() const { return keys_; }

  /// Members in lexicographic order of their entry sequences.
  std::vector<Permutation> sorted() const {
    std::vector<Permutation> out;
    out.reserve(keys_.size());
    for (PatternKey k : keys_) out.push_back(decode(k));
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::unordered_set<PatternKey, PatternKeyHash> keys_;
};

namespace detail {

// del(p, i) on packed keys; i is 0-based.
inline PatternKey delete_key(PatternKey key, int i) {
  const int n = static_cast<int>(key.value >> 60);
  const auto removed = (key.value >> (4 * i)) & 0xF;
  std::uint64_t out = static_cast<std::uint64_t>(n - 1) << 60;
  int slot = 0;
  for (int pos = 0; pos < n; ++pos) {
    if (pos == i) continue;
    auto v = (key.value >> (4 * pos)) & 0xF;
    if (v > removed) --v;
    out |= v << (4 * slot++);
  }
  return PatternKey{out};
}

}  // namespace detail

/// D_1(p): the distinct (n-1)-patterns del(p, i).
inline PatternSet coatoms(const Permutation& p) {
  if (p.size() <= 1) throw InvalidArgument("coatoms: need n >= 2");
  check_keyable(p.size());
  PatternSet out;
  const PatternKey key = encode(p);
  for (int i = 0; i < p.size(); ++i) out.insert(detail::delete_key(key, i));
  return out;
}

/// |D_1(p)| = n - C(p), without enumerating.
inline int coatom_count_fast(const Permutation& p) {
  if (p.size() <= 1) throw InvalidArgument("coatom_count_fast: need n >= 2");
  return p.size() - bond_count(p);
}

/// D_k(p) by direct deletion of every k-subset of positions.
inline PatternSet patterns_at_level(const Permutation& p, int k) {
  const int n = p.size();
  if (k < 0 || k > n) {
    throw InvalidArgument("level " + std::to_string(k) + " out of range 0.." + std::to_string(n));
  }
  check_keyable(n);
  PatternSet out;
  // Walk k-subsets of the n positions as bitmasks of the kept entries.
  std::vector<int> kept;
  kept.reserve(static_cast<std::size_t>(n));
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != n - k) continue;
    kept.clear();
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) kept.push_back(p(i + 1));
    }
    out.insert(standardize(kept));
  }
  return out;
}

struct DownsetSummary {
  int n = 0;
  /// level_counts[k] = |D_k(p)| for 0 <= k <= n - 1.
  std::vector<std::uint64_t> level_counts;
  std::uint64_t total = 0;
};

/// Every level of the downset, generated top-down: level k + 1 is the union
/// of coatoms over level k. `visit(k, level)` sees each level as it is built.
template <typename Visit>
DownsetSummary downset_levels(const Permutation& p, Visit&& visit) {
  if (p.empty()) throw InvalidArgument("downset: need n >= 1");
  check_keyable(p.size());
  DownsetSummary s;
  s.n = p.size();
  std::unordered_set<PatternKey, PatternKeyHash> level{encode(p)};
  for (int k = 0; k < s.n; ++k) {
    s.level_counts.push_back(level.size());
    s.total += level.size();
    visit(k, level);
    if (k + 1 == s.n) break;
    std::unordered_set<PatternKey, PatternKeyHash> next;
    next.reserve(level.size() * 2);
    const int len = s.n - k;
    for (PatternKey key : level) {
      for (int i = 0; i < len; ++i) next.insert(detail::delete_key(key, i));
    }
    level = std::move(next);
  }
  return s;
}

inline DownsetSummary downset_summary(const Permutation& p) {
  return downset_levels(p, [](int, const auto&) {});
}

/// I_1(q): every permutation one longer than q that contains q.
inline PatternSet upset_one(const Permutation& q) {
  if (q.empty()) throw InvalidArgument("upset_one: need |q| >= 1");
  const int n = q.size() + 1;
  check_keyable(n);
  PatternSet out;
  for (int j = 1; j <= n; ++j) {
    for (int k = 1; k <= n; ++k) out.insert(insert_entry(q, j, k));
  }
  return out;
}

enum class FastRegime {
  all_distinct,    // mg(p) >= k + 2: every k-deletion gives a distinct pattern
  pair_formula,    // mg(p) == k + 1: C(n, k) - w_k
  not_applicable,  // mg(p) <= k: no closed form
};

inline const char* to_string(FastRegime r) {
  switch (r) {
    case FastRegime::all_distinct: return "all_distinct";
    case FastRegime::pair_formula: return "pair_formula";
    default: return "not_applicable";
  }
}

struct LevelCount {
  FastRegime regime = FastRegime::not_applicable;
  std::optional<std::uint64_t> value;
};

/// Closed-form |D_k(p)| from the minimum gap, when the gap regime allows it.
///
/// In the pair_formula regime the value is C(n, k) - w_k. That is exact for
/// k = 1 (it reduces to n - C(p)). For k >= 2, exhaustive checks find
/// permutations where three deletion sets collide (24153 at k = 2 gives 6,
/// true count 5), so the value is an upper bound there, not a guarantee.
inline LevelCount level_count_fast(const Permutation& p, int k) {
  const int n = p.size();
  if (k < 1 || k > n - 1) {
    throw InvalidArgument("level " + std::to_string(k) + " out of range 1.." + std::to_string(n - 1));
  }
  const GapReport g = gap_report(p);
  if (g.min_gap >= k + 2) return {FastRegime::all_distinct, binomial(n, k)};
  if (g.min_gap == k + 1) return {FastRegime::pair_formula, binomial(n, k) - g.w_at(k)};
  return {FastRegime::not_applicable, std::nullopt};
}

/// The eight images of p under reverse, complement and inverse.
inline std::array<Permutation, 8> symmetry_orbit(const Permutation& p) {
  const Permutation i = inverse(p);
  return {p,          reverse(p),          complement(p),          reverse(complement(p)),
          i,          reverse(i),          complement(i),          reverse(complement(i))};
}

struct SearchResult {
  int n = 0;
  std::uint64_t max_total = 0;
  std::vector<Permutation> argmax;  // sorted
};

struct SearchOptions {
  unsigned threads = 1;
  bool allow_large = false;
  static constexpr int max_default_n = 9;
};

/// Largest |D(p)| over S_n, with every permutation attaining it.
///
/// Only orbit-minimal permutations are evaluated (downset size is invariant
/// under the symmetries); maximizer orbits are expanded afterwards.
inline SearchResult search_max_patterns(int n, SearchOptions opts = {}) {
  if (n < 1) throw InvalidArgument("search_max_patterns: need n >= 1");
  if (n > SearchOptions::max_default_n && !opts.allow_large) {
    throw Infeasible("search over S_" + std::to_string(n) + " is too large; pass --force to override");
  }
  check_keyable(n);

  struct Partial {
    std::uint64_t best = 0;
    std::vector<Permutation> reps;
  };
  // One chunk per leading value.
  std::vector<Partial> partials(static_cast<std::size_t>(n));
  parallel_chunks(partials.size(), opts.threads, [&](std::size_t chunk) {
    Partial& part = partials[chunk];
    const int lead = static_cast<int>(chunk) + 1;
    std::vector<int> rest;
    for (int v = 1; v <= n; ++v) {
      if (v != lead) rest.push_back(v);
    }
    std::vector<int> e(static_cast<std::size_t>(n));
    do {
      e[0] = lead;
      std::copy(rest.begin(), rest.end(), e.begin() + 1);
      const Permutation p = Permutation::from_trusted(e);
      const auto orbit = symmetry_orbit(p);
      if (std::any_of(orbit.begin(), orbit.end(), [&](const Permutation& q) { return q < p; })) continue;
      const std::uint64_t total = downset_summary(p).total;
      if (total > part.best) {
        part.best = total;
        part.reps.clear();
      }
      if (total == part.best) part.reps.push_back(p);
    } while (std::next_permutation(rest.begin(), rest.end()));
  });

  SearchResult result;
  result.n = n;
  for (const Partial& part : partials) result.max_total = std::max(result.max_total, part.best);
  std::vector<Permutation> all;
  for (const Partial& part : partials) {
    if (part.best != result.max_total) continue;
    for (const Permutation& rep : part.reps) {
      for (const Permutation& q : symmetry_orbit(rep)) all.push_back(q);
    }
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  result.argmax = std::move(all);
  return result;
}

}  // namespace permpat
