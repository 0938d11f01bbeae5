#pragma once

#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "bonds.hpp"
#include "construct.hpp"
#include "gap.hpp"
#include "genfun.hpp"
#include "patterns.hpp"
#include "permutation.hpp"

namespace permpat {

struct VerifyCheck {
  explicit VerifyCheck(std::string check_name) : name(std::move(check_name)) {}

  std::string name;
  bool passed = true;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::vector<std::string> examples;  // first few failing cases

  void record(bool ok, const std::function<std::string()>& describe) {
    ++cases;
    if (ok) return;
    passed = false;
    ++failures;
    if (examples.size() < 5) examples.push_back(describe());
  }
};

struct VerifyReport {
  std::string suite;
  std::vector<VerifyCheck> checks;

  bool passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }
};

namespace detail {

inline std::string show(const Permutation& p) { return to_string(p); }

// Core and patterns invariants, exhaustively over S_2..S_max_n.
inline void verify_oracle(int max_n, VerifyReport& report) {
  VerifyCheck round_trip{"insert/delete round trip"};
  VerifyCheck lemma{"equal deletions iff same run"};
  VerifyCheck bond_distance{"bond iff distance 2"};
  VerifyCheck ratchet{"min_gap(del(p,i)) >= min_gap(p) - 1"};
  VerifyCheck histogram{"gap histogram sums to C(n,2)"};
  VerifyCheck coatom_formula{"|D_1(p)| = n - C(p)"};
  VerifyCheck no_bond_max{"|D_1(p)| = n iff no bonds"};
  VerifyCheck all_distinct{"mg >= k+2 => |D_k| = C(n,k)"};
  VerifyCheck first_level_pairs{"mg = 2 => |D_1| = n - w_1"};
  VerifyCheck levels_agree{"level-by-level downset = direct deletion"};
  VerifyCheck chain{"|D_k| = C(n,k) => |D_j| = C(n,j) for j <= k"};
  VerifyCheck bound{"|D_k| <= min(C(n,k), (n-k)!)"};
  VerifyCheck upset{"|I_1(q)| = |q|^2 + 1"};

  for (int n = 1; n <= max_n; ++n) {
    for_each_permutation(n, [&](const Permutation& p) {
      for (int i = 1; i <= n; ++i) {
        round_trip.record(insert_entry(delete_entry(p, i), i, p(i)) == p,
                          [&] { return show(p) + " at " + std::to_string(i); });
      }
      if (n + 1 <= max_n) {
        for (int j = 1; j <= n + 1; ++j) {
          for (int k = 1; k <= n + 1; ++k) {
            round_trip.record(delete_entry(insert_entry(p, j, k), j) == p, [&] {
              return "del(ins(" + show(p) + "," + std::to_string(j) + "," + std::to_string(k) + "))";
            });
          }
        }
      }
      if (n < 2) return;

      const RunDecomposition runs = run_decomposition(p);
      for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
          const bool same_run = runs.run_of(i) == runs.run_of(j);
          lemma.record((delete_entry(p, i) == delete_entry(p, j)) == same_run,
                       [&] { return show(p) + " (" + std::to_string(i) + "," + std::to_string(j) + ")"; });
        }
      }
      for (int i = 1; i < n; ++i) {
        bond_distance.record(is_bond(p, i) == (taxicab_distance(p, i, i + 1) == 2),
                             [&] { return show(p) + " at " + std::to_string(i); });
      }

      const GapReport gaps = gap_report(p);
      std::uint64_t pairs = 0;
      for (auto [k, c] : gaps.w) pairs += c;
      histogram.record(pairs == binomial(n, 2), [&] { return show(p); });
      if (n >= 3) {
        for (int i = 1; i <= n; ++i) {
          ratchet.record(min_gap(delete_entry(p, i)) >= gaps.min_gap - 1,
                         [&] { return show(p) + " at " + std::to_string(i); });
        }
      }

      const std::size_t d1 = coatoms(p).size();
      coatom_formula.record(static_cast<int>(d1) == coatom_count_fast(p), [&] { return show(p); });
      no_bond_max.record((static_cast<int>(d1) == n) == (bond_count(p) == 0), [&] { return show(p); });

      std::vector<std::uint64_t> direct(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k) direct[k] = patterns_at_level(p, k).size();
      const DownsetSummary summary = downset_summary(p);
      levels_agree.record(summary.level_counts == direct, [&] { return show(p); });

      for (int k = 1; k < n; ++k) {
        const LevelCount fast = level_count_fast(p, k);
        if (fast.regime == FastRegime::all_distinct) {
          all_distinct.record(*fast.value == direct[k],
                              [&] { return show(p) + " k=" + std::to_string(k); });
        }
        if (fast.regime == FastRegime::pair_formula && k == 1) {
          first_level_pairs.record(*fast.value == direct[k], [&] { return show(p); });
        }
        if (direct[k] == binomial(n, k)) {
          bool all_below = true;
          for (int j = 0; j < k; ++j) all_below = all_below && direct[j] == binomial(n, j);
          chain.record(all_below, [&] { return show(p) + " k=" + std::to_string(k); });
        }
      }
      for (int k = 0; k < n; ++k) {
        const std::uint64_t cap = std::min<std::uint64_t>(
            binomial(n, k), static_cast<std::uint64_t>(factorial(n - k)));
        bound.record(direct[k] >= 1 && direct[k] <= cap, [&] { return show(p) + " k=" + std::to_string(k); });
      }
    });
    if (n <= 6) {
      for_each_permutation(n, [&](const Permutation& q) {
        const std::uint64_t expected = static_cast<std::uint64_t>(n) * n + 1;
        upset.record(upset_one(q).size() == expected, [&] { return show(q); });
      });
    }
  }
  for (auto* c : {&round_trip, &lemma, &bond_distance, &ratchet, &histogram, &coatom_formula, &no_bond_max,
                  &all_distinct, &first_level_pairs, &levels_agree, &chain, &bound, &upset}) {
    report.checks.push_back(std::move(*c));
  }
}

inline void verify_pair_formula(int max_n, VerifyReport& report) {
  VerifyCheck check{"mg = k+1 => |D_k| = C(n,k) - w_k"};
  for (int n = 2; n <= max_n; ++n) {
    for_each_permutation(n, [&](const Permutation& p) {
      const int mg = min_gap(p);
      const int k = mg - 1;
      if (k < 1 || k > n - 1) return;
      const LevelCount fast = level_count_fast(p, k);
      const std::size_t actual = patterns_at_level(p, k).size();
      check.record(*fast.value == actual, [&] {
        return show(p) + " k=" + std::to_string(k) + ": formula " + std::to_string(*fast.value) +
               ", enumerated " + std::to_string(actual);
      });
    });
  }
  report.checks.push_back(std::move(check));
}

inline void verify_series(int order, int brute_n, VerifyReport& report) {
  const BivariateSeries f = series_F(order);
  const BivariateSeries g = series_G(order);
  const BivariateSeries h = series_H(f);

  VerifyCheck totality{"row sums of F equal n!"};
  VerifyCheck transform{"G(z, u - 1) = F(z, u)"};
  VerifyCheck inverse_transform{"F(z, u + 1) = G(z, u)"};
  VerifyCheck g_base{"b_{n,0} = n!"};
  VerifyCheck reflection{"d_{n,k} = a_{n,n-k}, rows of H sum to n!"};
  VerifyCheck brute{"F triangle = brute-force bond histogram"};
  VerifyCheck prefix{"F(z,0) starts 1,1,0,0,2,14,90,646,5242"};

  for (int n = 0; n <= order; ++n) {
    totality.record(f.row_sum(n) == factorial(n), [&] { return "n=" + std::to_string(n); });
    g_base.record(g.coefficient(n, 0) == factorial(n), [&] { return "n=" + std::to_string(n); });
    reflection.record(h.row_sum(n) == factorial(n), [&] { return "n=" + std::to_string(n); });
    for (int k = 0; k <= n; ++k) {
      reflection.record(h.coefficient(n, k) == f.coefficient(n, n - k),
                        [&] { return "(" + std::to_string(n) + "," + std::to_string(k) + ")"; });
    }
  }
  transform.record(g.shift_u(-1) == f, [] { return std::string("coefficient mismatch"); });
  inverse_transform.record(f.shift_u(1) == g, [] { return std::string("coefficient mismatch"); });

  for (int n = 1; n <= std::min(brute_n, order); ++n) {
    std::vector<BigInt> hist(static_cast<std::size_t>(n + 1), 0);
    for_each_permutation(n, [&](const Permutation& p) { ++hist[bond_count(p)]; });
    for (int k = 0; k <= n; ++k) {
      brute.record(hist[k] == f.coefficient(n, k),
                   [&] { return "(" + std::to_string(n) + "," + std::to_string(k) + ")"; });
    }
  }
  const std::vector<int> known{1, 1, 0, 0, 2, 14, 90, 646, 5242};
  for (int n = 0; n < static_cast<int>(known.size()) && n <= order; ++n) {
    prefix.record(f.coefficient(n, 0) == known[n], [&] { return "n=" + std::to_string(n); });
  }
  for (auto* c : {&totality, &transform, &inverse_transform, &g_base, &reflection, &brute, &prefix}) {
    report.checks.push_back(std::move(*c));
  }
}

inline void verify_moments(int order, VerifyReport& report) {
  const BivariateSeries f = series_F(order);
  VerifyCheck mean{"table mean = 2(n-1)/n"};
  VerifyCheck variance{"table variance = closed form"};
  VerifyCheck patterns{"E[phi] = n - 2(n-1)/n, (n-1)!(n^2-2n+2) = n! E[phi]"};
  for (int n = 1; n <= order; ++n) {
    const MomentReport m = bond_moments_from_table(n, f);
    mean.record(m.mean == closed_form_bond_mean(n), [&] { return "n=" + std::to_string(n); });
    variance.record(m.variance == closed_form_bond_variance(n), [&] { return "n=" + std::to_string(n); });
    if (n >= 2) {
      const MomentReport phi = pattern_count_moments(n);
      const Rational lhs = Rational(factorial(n - 1) * (n * n - 2 * n + 2));
      patterns.record(phi.mean == Rational(n) - m.mean && lhs == Rational(factorial(n)) * phi.mean &&
                          phi.variance == m.variance,
                      [&] { return "n=" + std::to_string(n); });
    }
  }
  for (auto* c : {&mean, &variance, &patterns}) report.checks.push_back(std::move(*c));
}

inline void verify_construction_suite(VerifyReport& report) {
  VerifyCheck figures{"pi(4) = 3614725, pi(5) = 4,8,12,1,5,9,13,2,6,10,14,3,7,11"};
  figures.record(slanted_grid(4) == Permutation{3, 6, 1, 4, 7, 2, 5}, [] { return std::string("pi(4)"); });
  figures.record(slanted_grid(5) == Permutation{4, 8, 12, 1, 5, 9, 13, 2, 6, 10, 14, 3, 7, 11},
                 [] { return std::string("pi(5)"); });

  VerifyCheck shape{"length (k-1)^2-2 and min_gap k for 4 <= k <= 20"};
  VerifyCheck symmetry{"involution, complement = reverse for 3 <= k <= 12"};
  VerifyCheck levels{"|D_j| = C(n,j) for j <= k-2 (k = 4, 5)"};
  VerifyCheck minimal{"no shorter permutation with min_gap >= k (k = 3, 4)"};
  for (int k = 4; k <= 20; ++k) {
    const Permutation p = slanted_grid(k);
    shape.record(p.size() == (k - 1) * (k - 1) - 2 && min_gap(p) == k, [&] { return "k=" + std::to_string(k); });
  }
  for (int k = 3; k <= 12; ++k) {
    symmetry.record(involution_symmetry_check(k), [&] { return "k=" + std::to_string(k); });
  }
  for (int k : {4, 5}) {
    const ConstructionReport r = verify_construction(k);
    levels.record(r.levels_all_distinct && *r.levels_all_distinct >= k - 2,
                  [&] { return "k=" + std::to_string(k); });
  }
  for (int k : {3, 4}) {
    minimal.record(minimality_search(k).minimal, [&] { return "k=" + std::to_string(k); });
  }
  for (auto* c : {&figures, &shape, &symmetry, &levels, &minimal}) report.checks.push_back(std::move(*c));
}

}  // namespace detail

/// Names accepted by run_verify_suite.
inline std::vector<std::string> verify_suite_names() {
  return {"oracle-n7", "oracle-n8", "pair-formula", "series", "moments", "construction", "all"};
}

inline VerifyReport run_verify_suite(const std::string& suite) {
  VerifyReport report{suite, {}};
  if (suite == "oracle-n7" || suite == "oracle-n8") {
    detail::verify_oracle(suite == "oracle-n7" ? 7 : 8, report);
  } else if (suite == "pair-formula") {
    detail::verify_pair_formula(7, report);
  } else if (suite == "series") {
    detail::verify_series(default_series_order, 8, report);
  } else if (suite == "moments") {
    detail::verify_moments(default_series_order, report);
  } else if (suite == "construction") {
    detail::verify_construction_suite(report);
  } else if (suite == "all") {
    detail::verify_oracle(7, report);
    detail::verify_pair_formula(7, report);
    detail::verify_series(default_series_order, 8, report);
    detail::verify_moments(default_series_order, report);
    detail::verify_construction_suite(report);
  } else {
    throw InvalidArgument("unknown verify suite '" + suite + "'");
  }
  return report;
}

}  // namespace permpat
