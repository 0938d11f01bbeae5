// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "permpat/cli.hpp"
#include "permpat/permpat.hpp"

using namespace permpat;

namespace {

struct Verdict {
  bool passed = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;
  std::function<Verdict()> body;
};

oracle::Seq seq(const Permutation& p) { return {p.entries().begin(), p.entries().end()}; }

Verdict no_bond_sequence_cli() {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run({"genfun", "--order", "8", "--no-bonds"}, out, err);
  if (code != 0) return {false, "exit code " + std::to_string(code) + ": " + err.str()};
  const auto doc = nlohmann::json::parse(out.str());
  const auto got = doc["result"]["no_bond_sequence"];
  const nlohmann::json expected = {1, 1, 0, 0, 2, 14, 90, 646, 5242};
  return {got == expected, "got " + got.dump()};
}

Verdict oracle_triangle() {
  const BivariateSeries f = series_F(8);
  for (int n = 1; n <= 8; ++n) {
    const auto hist = oracle::bond_histogram(n);
    for (int k = 0; k <= n; ++k) {
      const std::uint64_t brute = k < n ? hist[k] : 0;
      if (f.coefficient(n, k) != brute) {
        return {false, "a(" + std::to_string(n) + "," + std::to_string(k) + ") = " + f.coefficient(n, k).str() +
                           ", brute force " + std::to_string(brute)};
      }
    }
  }
  return {true, "a(n,k) for n <= 8 equal bond histograms (40320 permutations at n = 8)"};
}

Verdict coatom_theorem() {
  std::uint64_t checked = 0;
  for (int n = 2; n <= 8; ++n) {
    bool ok = true;
    std::string bad;
    for_each_permutation(n, [&](const Permutation& p) {
      ++checked;
      if (ok && static_cast<int>(coatoms(p).size()) != n - oracle::bonds(seq(p))) {
        ok = false;
        bad = to_string(p);
      }
    });
    if (!ok) return {false, "fails at " + bad};
  }
  return {true, std::to_string(checked) + " permutations"};
}

Verdict upset_size() {
  std::uint64_t checked = 0;
  for (int m = 1; m <= 6; ++m) {
    bool ok = true;
    std::string bad;
    for_each_permutation(m, [&](const Permutation& q) {
      ++checked;
      if (ok && upset_one(q).size() != static_cast<std::size_t>(m * m + 1)) {
        ok = false;
        bad = to_string(q);
      }
    });
    if (!ok) return {false, "fails at " + bad};
  }
  return {true, std::to_string(checked) + " patterns q"};
}

Verdict moment_identities() {
  const BivariateSeries f = series_F(30);
  for (int n = 1; n <= 30; ++n) {
    const MomentReport m = bond_moments_from_table(n, f);
    const Rational mean(2 * (n - 1), n);
    const Rational second = n >= 2 ? Rational(4 * (n - 2) * (n - 2), n * (n - 1)) : Rational(0);
    const Rational variance = second + mean - Rational(4 * (n - 1) * (n - 1), n * n);
    if (m.mean != mean || m.variance != variance) {
      return {false, "n = " + std::to_string(n) + ": mean " + cli::rational_text(m.mean) + ", variance " +
                         cli::rational_text(m.variance)};
    }
  }
  return {true, "exact rational equality for 1 <= n <= 30"};
}

Verdict gap_theorems() {
  std::uint64_t distinct_cases = 0;
  std::uint64_t distinct_failures = 0;
  std::uint64_t pair_cases = 0;
  std::uint64_t pair_failures = 0;
  std::string first_distinct;
  std::string first_pair;
  for (int n = 2; n <= 8; ++n) {
    for_each_permutation(n, [&](const Permutation& p) {
      const GapReport g = gap_report(p);
      for (int k = 1; k < n; ++k) {
        if (g.min_gap < k + 1) continue;
        const std::size_t actual = patterns_at_level(p, k).size();
        if (g.min_gap >= k + 2) {
          ++distinct_cases;
          if (actual != binomial(n, k)) {
            if (distinct_failures++ == 0) first_distinct = to_string(p) + " k=" + std::to_string(k);
          }
        } else {
          ++pair_cases;
          const std::uint64_t predicted = binomial(n, k) - g.w_at(k);
          if (actual != predicted) {
            if (pair_failures++ == 0) {
              first_pair = to_string(p) + " k=" + std::to_string(k) + ": |D_k| = " + std::to_string(actual) +
                           ", C(n,k) - w_k = " + std::to_string(predicted);
            }
          }
        }
      }
    });
  }
  std::ostringstream detail;
  detail << "(i) mg >= k+2: " << distinct_cases - distinct_failures << "/" << distinct_cases << " hold";
  if (distinct_failures) detail << " [first failure " << first_distinct << "]";
  detail << "; (ii) mg = k+1: " << pair_cases - pair_failures << "/" << pair_cases << " hold";
  if (pair_failures) detail << " [first failure " << first_pair << "]";
  return {distinct_failures == 0 && pair_failures == 0, detail.str()};
}

Verdict construction() {
  if (slanted_grid(4) != parse_permutation("3614725")) return {false, "pi(4) = " + to_string(slanted_grid(4))};
  if (slanted_grid(5) != parse_permutation("4,8,12,1,5,9,13,2,6,10,14,3,7,11")) {
    return {false, "pi(5) = " + to_string(slanted_grid(5))};
  }
  for (int k = 4; k <= 20; ++k) {
    const Permutation p = slanted_grid(k);
    if (p.size() != (k - 1) * (k - 1) - 2 || min_gap(p) != k) {
      return {false, "k = " + std::to_string(k) + ": length " + std::to_string(p.size()) + ", min_gap " +
                         std::to_string(min_gap(p))};
    }
  }
  return {true, "figures match; length (k-1)^2-2 and min_gap k for 4 <= k <= 20"};
}

Verdict packing_data() {
  const std::vector<std::pair<const char*, std::uint64_t>> data{
      {"3614725", 55}, {"5274136", 55}, {"31462758", 75}, {"36147825", 89}};
  std::string detail;
  bool ok = true;
  for (auto [text, expected] : data) {
    const std::uint64_t total = downset_summary(parse_permutation(text)).total;
    ok = ok && total == expected;
    detail += std::string(text) + "=" + std::to_string(total) + " ";
  }
  return {ok, detail};
}

Verdict packing_maximum() {
  const SearchResult r = search_max_patterns(7);
  const bool has_grid = std::binary_search(r.argmax.begin(), r.argmax.end(), parse_permutation("3614725"));
  const bool has_other = std::binary_search(r.argmax.begin(), r.argmax.end(), parse_permutation("5274136"));
  return {r.max_total == 55 && has_grid && has_other,
          "max " + std::to_string(r.max_total) + " attained by " + std::to_string(r.argmax.size()) + " permutations"};
}

Verdict minimality() {
  const MinimalityResult r = minimality_search(4);
  return {r.minimal, std::to_string(r.scanned) + " permutations of length 1..6 scanned, " +
                         std::to_string(r.counterexamples.size()) + " with min_gap >= 4"};
}

Verdict monte_carlo() {
  const SampleStats s = estimate_bond_stats(100, 100000, 20240601, default_threads());
  const double mean_error = std::abs(s.mean_bonds - 1.98);
  const double p_error = std::abs(s.p_no_bond - std::exp(-2.0));
  std::ostringstream detail;
  detail << "mean " << s.mean_bonds << " (|err| " << mean_error << " <= 0.05), P(no bond) " << s.p_no_bond
         << " (|err| " << p_error << " <= 0.01)";
  return {mean_error <= 0.05 && p_error <= 0.01, detail.str()};
}

Verdict asymptotic_trends() {
  // P(no bond) -> 1/e^2 at n = 20 within 0.02.
  const BivariateSeries f = series_F(30);
  const double p20 = static_cast<double>(Rational(f.coefficient(20, 0), factorial(20)));
  // Var -> 2 at n = 200 within 0.05.
  const double var200 = static_cast<double>(pattern_count_moments(200).variance);
  // E[phi] - (n - 2) = 2/n, shrinking monotonically.
  bool shrinking = true;
  Rational previous = 1;
  for (int n = 2; n <= 200; ++n) {
    const Rational gap = pattern_count_moments(n).mean - Rational(n - 2);
    shrinking = shrinking && gap == Rational(2, n) && gap <= previous;
    previous = gap;
  }
  std::ostringstream detail;
  detail << "P_20 " << p20 << ", Var_200 " << var200 << ", E[phi]-(n-2) = 2/n for n <= 200";
  return {std::abs(p20 - std::exp(-2.0)) <= 0.02 && std::abs(var200 - 2.0) <= 0.05 && shrinking, detail.str()};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "no-bond sequence from genfun --order 8 --no-bonds", 1.0, no_bond_sequence_cli},
      {2, "series F triangle equals brute-force bond histogram, n <= 8", 10.0, oracle_triangle},
      {3, "|coatoms(p)| = n - C(p) for every p, n <= 8", 30.0, coatom_theorem},
      {4, "|upset_one(q)| = len(q)^2 + 1 for len(q) <= 6", 30.0, upset_size},
      {5, "table moments equal closed forms exactly, n <= 30", 1.0, moment_identities},
      {6, "gap theorems exhaustive, n <= 8", 300.0, gap_theorems},
      {7, "slanted-grid construction", 1.0, construction},
      {8, "downset totals 55, 55, 75, 89", 5.0, packing_data},
      {9, "search_max_patterns(7) = 55 with 3614725 and 5274136", 120.0, packing_maximum},
      {10, "minimality_search(4)", 1.0, minimality},
      {11, "Monte Carlo n = 100, 1e5 samples", 30.0, monte_carlo},
      {12, "asymptotic trends at finite n", 5.0, asymptotic_trends},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.body();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds <= c.budget_seconds;
    const bool passed = v.passed && in_time;
    failures += passed ? 0 : 1;
    std::printf("[%s] %2d %s (%.2fs / %.0fs budget)%s\n      %s\n", passed ? "PASS" : "FAIL", c.id, c.title.c_str(),
                seconds, c.budget_seconds, in_time ? "" : " OVER TIME BUDGET", v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
