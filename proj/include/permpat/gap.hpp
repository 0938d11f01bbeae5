#pragma once

#include <cstdint>
#include <cstdlib>
#include <map>
#include <utility>
#include <vector>

#include "permutation.hpp"

namespace permpat {

/// d_p(i, j) = |i - j| + |p_i - p_j|, the taxicab distance between plotted entries.
inline int taxicab_distance(const Permutation& p, int i, int j) {
  p.check_position(i);
  p.check_position(j);
  return std::abs(i - j) + std::abs(p(i) - p(j));
}

struct GapReport {
  int min_gap = 0;
  /// Position pairs (i < j) at distance min_gap.
  std::vector<std::pair<int, int>> witnesses;
  /// w[k] = number of pairs i < j with distance k + 1.
  std::map<int, std::uint64_t> w;

  std::uint64_t w_at(int k) const {
    auto it = w.find(k);
    return it == w.end() ? 0 : it->second;
  }
};

/// Minimum gap, its witnesses and the full pair-distance histogram.
/// Needs at least two entries.
inline GapReport gap_report(const Permutation& p) {
  const int n = p.size();
  if (n <= 1) throw InvalidArgument("gap_report: permutation has no pairs (n <= 1)");
  GapReport r;
  r.min_gap = 2 * n;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const int d = (j - i) + std::abs(p(i) - p(j));
      ++r.w[d - 1];
      if (d < r.min_gap) {
        r.min_gap = d;
        r.witnesses.clear();
      }
      if (d == r.min_gap) r.witnesses.emplace_back(i, j);
    }
  }
  return r;
}

inline int min_gap(const Permutation& p) {
  const int n = p.size();
  if (n <= 1) throw InvalidArgument("min_gap: permutation has no pairs (n <= 1)");
  int best = 2 * n;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n && j - i < best; ++j) {
      best = std::min(best, (j - i) + std::abs(p(i) - p(j)));
    }
  }
  return best;
}

/// Positions strictly between p_i and p_j horizontally or vertically.
inline std::vector<int> span(const Permutation& p, int i, int j) {
  p.check_position(i);
  p.check_position(j);
  if (i >= j) throw InvalidArgument("span: need i < j");
  const int lo = std::min(p(i), p(j));
  const int hi = std::max(p(i), p(j));
  std::vector<int> out;
  for (int k = 1; k <= p.size(); ++k) {
    if (k == i || k == j) continue;
    if ((i < k && k < j) || (lo < p(k) && p(k) < hi)) out.push_back(k);
  }
  return out;
}

}  // namespace permpat
