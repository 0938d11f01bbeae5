#pragma once

#include <cstdlib>
#include <vector>

#include "permutation.hpp"

namespace permpat {

enum class RunDirection { singleton, ascending, descending };

inline const char* to_string(RunDirection d) {
  switch (d) {
    case RunDirection::ascending: return "ascending";
    case RunDirection::descending: return "descending";
    default: return "singleton";
  }
}

struct Run {
  int start = 1;  // 1-indexed first position
  int length = 1;
  RunDirection direction = RunDirection::singleton;

  int end() const { return start + length - 1; }
  friend bool operator==(const Run&, const Run&) = default;
};

/// Maximal runs of consecutive values (all +1 steps or all -1 steps), left to right.
struct RunDecomposition {
  std::vector<Run> runs;
  int bond_count = 0;

  /// Index into `runs` of the run holding position i.
  std::size_t run_of(int i) const {
    for (std::size_t r = 0; r < runs.size(); ++r) {
      if (i >= runs[r].start && i <= runs[r].end()) return r;
    }
    throw InvalidArgument("position " + std::to_string(i) + " not covered by any run");
  }
};

/// (p_i, p_{i+1}) is a bond when the values differ by exactly one.
inline bool is_bond(const Permutation& p, int i) {
  return std::abs(p(i) - p(i + 1)) == 1;
}

/// C(p): the number of bonds.
inline int bond_count(const Permutation& p) {
  int c = 0;
  for (int i = 1; i < p.size(); ++i) c += is_bond(p, i) ? 1 : 0;
  return c;
}

inline RunDecomposition run_decomposition(const Permutation& p) {
  RunDecomposition out;
  const int n = p.size();
  int i = 1;
  while (i <= n) {
    Run run{i, 1, RunDirection::singleton};
    if (i < n && is_bond(p, i)) {
      const int step = p(i + 1) - p(i);
      run.direction = step > 0 ? RunDirection::ascending : RunDirection::descending;
      while (run.end() < n && p(run.end() + 1) - p(run.end()) == step) ++run.length;
    }
    out.bond_count += run.length - 1;
    out.runs.push_back(run);
    i = run.end() + 1;
  }
  return out;
}

}  // namespace permpat
