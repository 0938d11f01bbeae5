#include <gtest/gtest.h>

#include "oracles.hpp"
#include "permpat/bonds.hpp"
#include "permpat/gap.hpp"

using namespace permpat;

namespace {

oracle::Seq seq(const Permutation& p) { return {p.entries().begin(), p.entries().end()}; }

}  // namespace

TEST(Runs, Ascending) {
  const RunDecomposition r = run_decomposition(parse_permutation("1234"));
  ASSERT_EQ(r.runs.size(), 1u);
  EXPECT_EQ(r.runs[0], (permpat::Run{1, 4, RunDirection::ascending}));
  EXPECT_EQ(r.bond_count, 3);
}

TEST(Runs, NoBonds) {
  const RunDecomposition r = run_decomposition(parse_permutation("2413"));
  EXPECT_EQ(r.runs.size(), 4u);
  EXPECT_EQ(r.bond_count, 0);
  for (const permpat::Run& run : r.runs) EXPECT_EQ(run.direction, RunDirection::singleton);
}

TEST(Runs, Mixed) {
  // Adjacent differences of 146325: +3 +2 -3 -1 +3, so only (3,2) is a bond.
  const RunDecomposition r = run_decomposition(parse_permutation("146325"));
  const std::vector<permpat::Run> expected{{1, 1, RunDirection::singleton},
                                  {2, 1, RunDirection::singleton},
                                  {3, 1, RunDirection::singleton},
                                  {4, 2, RunDirection::descending},
                                  {6, 1, RunDirection::singleton}};
  EXPECT_EQ(r.runs, expected);
  EXPECT_EQ(r.bond_count, 1);
}

TEST(Runs, Degenerate) {
  EXPECT_TRUE(run_decomposition(Permutation{}).runs.empty());
  EXPECT_EQ(run_decomposition(Permutation{}).bond_count, 0);
  const RunDecomposition one = run_decomposition(Permutation{1});
  ASSERT_EQ(one.runs.size(), 1u);
  EXPECT_EQ(one.runs[0], (permpat::Run{1, 1, RunDirection::singleton}));
}

TEST(Runs, InvariantsExhaustive) {
  for (int n = 0; n <= 8; ++n) {
    for_each_permutation(n, [&](const Permutation& p) {
      const RunDecomposition r = run_decomposition(p);
      int next = 1;
      int bonds = 0;
      for (const permpat::Run& run : r.runs) {
        ASSERT_EQ(run.start, next);
        next = run.end() + 1;
        bonds += run.length - 1;
        for (int i = run.start; i < run.end(); ++i) {
          ASSERT_EQ(p(i + 1) - p(i), run.direction == RunDirection::ascending ? 1 : -1);
        }
      }
      ASSERT_EQ(next, n + 1);
      ASSERT_EQ(r.bond_count, bonds);
      ASSERT_EQ(r.bond_count, oracle::bonds(seq(p)));
      ASSERT_EQ(bond_count(p), r.bond_count);
    });
  }
}

// del(p, j) = del(p, k) exactly when j and k share a run.
TEST(Runs, EqualDeletionsIffSameRun) {
  for (int n = 2; n <= 8; ++n) {
    for_each_permutation(n, [&](const Permutation& p) {
      const RunDecomposition r = run_decomposition(p);
      for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
          ASSERT_EQ(delete_entry(p, i) == delete_entry(p, j), r.run_of(i) == r.run_of(j)) << p << " " << i << "," << j;
        }
      }
    });
  }
}

TEST(Taxicab, Examples) {
  const Permutation p = parse_permutation("2413");
  for (int i = 1; i <= 4; ++i) EXPECT_EQ(taxicab_distance(p, i, i), 0);
  EXPECT_EQ(taxicab_distance(parse_permutation("1234"), 1, 2), 2);
  EXPECT_EQ(taxicab_distance(p, 2, 3), 4);
  EXPECT_EQ(taxicab_distance(p, 3, 2), 4);
  EXPECT_THROW(taxicab_distance(p, 0, 2), InvalidArgument);
}

TEST(Taxicab, BondIffDistanceTwo) {
  for (int n = 2; n <= 8; ++n) {
    for_each_permutation(n, [&](const Permutation& p) {
      for (int i = 1; i < n; ++i) ASSERT_EQ(is_bond(p, i), taxicab_distance(p, i, i + 1) == 2);
    });
  }
}

TEST(GapReport, Examples) {
  EXPECT_EQ(gap_report(parse_permutation("3614725")).min_gap, 4);
  EXPECT_EQ(gap_report(parse_permutation("5274136")).min_gap, 3);
  EXPECT_EQ(gap_report(parse_permutation("36147825")).min_gap, 2);
  EXPECT_THROW(gap_report(Permutation{1}), InvalidArgument);
  EXPECT_THROW(gap_report(Permutation{}), InvalidArgument);
}

TEST(GapReport, WitnessesAndHistogram) {
  const GapReport g = gap_report(parse_permutation("3614725"));
  // Pairs at distance 4 in 3614725: (1,2) 1+3, (1,4) 3+1, ...; every witness must be at distance 4.
  for (auto [i, j] : g.witnesses) EXPECT_EQ(taxicab_distance(parse_permutation("3614725"), i, j), 4);
  EXPECT_EQ(g.w_at(3), g.witnesses.size());
  EXPECT_EQ(g.w_at(1), 0u);
}

TEST(GapReport, InvariantsExhaustive) {
  for (int n = 2; n <= 7; ++n) {
    for_each_permutation(n, [&](const Permutation& p) {
      const GapReport g = gap_report(p);
      ASSERT_EQ(g.min_gap, oracle::min_gap(seq(p)));
      ASSERT_EQ(g.min_gap, min_gap(p));
      std::uint64_t total = 0;
      for (auto [k, c] : g.w) total += c;
      ASSERT_EQ(total, binomial(n, 2));
      std::uint64_t at_min = 0;
      for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
          ASSERT_GE(taxicab_distance(p, i, j), g.min_gap);
          at_min += taxicab_distance(p, i, j) == g.min_gap ? 1 : 0;
        }
      }
      ASSERT_EQ(at_min, g.witnesses.size());
      for (auto [i, j] : g.witnesses) {
        ASSERT_LT(i, j);
        ASSERT_EQ(taxicab_distance(p, i, j), g.min_gap);
        // A closest pair has exactly min_gap - 2 entries between it.
        ASSERT_EQ(static_cast<int>(span(p, i, j).size()), g.min_gap - 2);
      }
      // Deleting an entry lowers the gap by at most one.
      if (n >= 3) {
        for (int i = 1; i <= n; ++i) ASSERT_GE(min_gap(delete_entry(p, i)), g.min_gap - 1);
      }
    });
  }
}

TEST(Span, Examples) {
  EXPECT_EQ(span(parse_permutation("2413"), 1, 2), std::vector<int>{4});
  EXPECT_TRUE(span(parse_permutation("12"), 1, 2).empty());
  EXPECT_EQ(span(parse_permutation("4132"), 1, 4), (std::vector<int>{2, 3}));
  EXPECT_THROW(span(parse_permutation("12"), 2, 1), InvalidArgument);
  EXPECT_THROW(span(parse_permutation("12"), 1, 1), InvalidArgument);
  EXPECT_THROW(span(parse_permutation("12"), 1, 3), InvalidArgument);
}
