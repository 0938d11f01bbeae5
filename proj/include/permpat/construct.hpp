#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gap.hpp"
#include "patterns.hpp"
#include "permutation.hpp"

namespace permpat {

/// The slanted-grid permutation with minimum gap k and length (k-1)^2 - 2.
///
/// Centers of a 45-degree tiling: p'_i = ceil(i/(k-1)) + ((i-1) mod (k-1))(k-1)
/// for i in 1..(k-1)^2, with the first and last entries then removed.
inline Permutation slanted_grid(int k) {
  if (k < 3) throw InvalidArgument("slanted_grid: need k >= 3");
  const int side = k - 1;
  const int full = side * side;
  std::vector<int> e;
  e.reserve(static_cast<std::size_t>(full));
  for (int i = 1; i <= full; ++i) {
    const int column = (i + side - 1) / side;
    const int offset = ((i - 1) % side) * side;
    e.push_back(column + offset);
  }
  const Permutation grid(std::move(e));
  return delete_set(grid, {1, full});
}

struct ConstructionReport {
  int k = 0;
  Permutation perm;
  int length = 0;
  int min_gap = 0;
  /// Largest j with |D_j| = C(n, j); absent when enumeration was skipped.
  std::optional<int> levels_all_distinct;
  /// k = 3 yields a 2-permutation whose gap is 2, not k.
  bool degenerate = false;
};

/// Longest construction whose downset levels are enumerated.
inline constexpr int max_enumerated_construction_length = PatternKey::max_length;

inline ConstructionReport verify_construction(int k) {
  ConstructionReport r;
  r.k = k;
  r.perm = slanted_grid(k);
  r.length = r.perm.size();
  r.min_gap = min_gap(r.perm);
  r.degenerate = r.min_gap != k;
  if (r.length <= max_enumerated_construction_length) {
    int j = 0;
    while (j + 1 <= r.length &&
           patterns_at_level(r.perm, j + 1).size() == binomial(r.length, j + 1)) {
      ++j;
    }
    r.levels_all_distinct = j;
  }
  return r;
}

/// pi^(k) is an involution and its complement equals its reverse.
inline bool involution_symmetry_check(int k) {
  const Permutation p = slanted_grid(k);
  return compose(p, p) == Permutation::identity(p.size()) && complement(p) == reverse(p);
}

struct MinimalityResult {
  bool minimal = false;
  std::uint64_t scanned = 0;
  std::vector<Permutation> counterexamples;
};

/// Scans every permutation shorter than (k-1)^2 - 2 for min_gap >= k.
/// Only k = 3, 4 are feasible unless `force` is set.
inline MinimalityResult minimality_search(int k, bool force = false) {
  if (k < 3) throw InvalidArgument("minimality_search: need k >= 3");
  if (k > 4 && !force) {
    throw Infeasible("minimality_search is infeasible for k = " + std::to_string(k) +
                     " (only k = 3, 4); pass --force to override");
  }
  MinimalityResult result;
  const int limit = (k - 1) * (k - 1) - 2;
  for (int m = 1; m < limit; ++m) {
    for_each_permutation(m, [&](const Permutation& p) {
      ++result.scanned;
      if (m >= 2 && min_gap(p) >= k) result.counterexamples.push_back(p);
    });
  }
  result.minimal = result.counterexamples.empty();
  return result;
}

}  // namespace permpat
