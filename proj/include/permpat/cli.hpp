#pragma once

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "permpat.hpp"
#include "verify.hpp"

namespace permpat::cli {

using nlohmann::json;

/// Process exit codes.
enum ExitCode : int {
  ok = 0,
  usage = 1,
  infeasible = 2,
  verification_failed = 3,
};

inline constexpr int max_enumeration_length = 12;
inline constexpr int max_series_order = 60;

inline json to_json(const Permutation& p) { return json(std::vector<int>(p.entries().begin(), p.entries().end())); }

inline json to_json(const std::vector<Permutation>& ps) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(to_json(p));
  return out;
}

/// Integers outside the int64 range become decimal strings.
inline json to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return json(static_cast<std::int64_t>(v));
  }
  return json(v.str());
}

inline json to_json(const Rational& r) {
  return json{{"numerator", to_json(BigInt(numerator(r)))}, {"denominator", to_json(BigInt(denominator(r)))}};
}

inline json to_json(const MomentReport& m) {
  return json{{"n", m.n},
              {"mean", to_json(m.mean)},
              {"variance", to_json(m.variance)},
              {"second_factorial_moment", to_json(m.second_factorial_moment)}};
}

inline std::string rational_text(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

struct Options {
  std::string format = "json";
  bool verbose = false;
  bool force = false;
  unsigned threads = 1;
};

inline unsigned env_threads() {
  if (const char* env = std::getenv("PERMPAT_THREADS")) {
    try {
      const int t = std::stoi(env);
      if (t >= 1) return static_cast<unsigned>(t);
    } catch (const std::exception&) {
    }
  }
  return default_threads();
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args) {
    CLI::App app{"Fixed-length permutation pattern toolkit", "permpat"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(version));
    opts_.threads = env_threads();
    app.add_option("--format", opts_.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_flag("--verbose", opts_.verbose, "Human-readable summary on stderr");
    app.add_flag("--force", opts_.force, "Override feasibility guards");
    app.add_option("--threads", opts_.threads, "Worker threads (default: $PERMPAT_THREADS or all cores)")
        ->check(CLI::PositiveNumber);

    std::string perm_text;
    int level = -1;
    bool all_levels = false;
    bool list = false;
    int order = default_series_order;
    std::string series = "F";
    bool no_bonds = false;
    bool moments = false;
    int factorial_order = 0;
    int k = 0;
    bool minimality = false;
    int n = 0;
    std::uint64_t samples = 100000;
    std::uint64_t seed = 1;
    std::string suite;

    // Options are registered on every subcommand so they may follow the subcommand name.
    auto add_common = [&](CLI::App* sub) {
      sub->add_option("--format", opts_.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
      sub->add_flag("--verbose", opts_.verbose, "Human-readable summary on stderr");
      sub->add_flag("--force", opts_.force, "Override feasibility guards");
      sub->add_option("--threads", opts_.threads, "Worker threads")->check(CLI::PositiveNumber);
    };

    auto* analyze = app.add_subcommand("analyze", "Bonds, runs, gaps and coatoms of a permutation");
    analyze->add_option("perm", perm_text, "Permutation, e.g. 3614725 or 10,2,...")->required();
    auto* patterns = app.add_subcommand("patterns", "Distinct patterns at one level or every level");
    patterns->add_option("perm", perm_text, "Permutation")->required();
    auto* level_opt = patterns->add_option("--level", level, "Number of deleted entries k");
    patterns->add_flag("--all", all_levels, "Full level profile")->excludes(level_opt);
    patterns->add_flag("--list", list, "Include the sorted patterns of every level (with --all)");
    auto* downset = app.add_subcommand("downset", "Level counts and size of the full downset");
    downset->add_option("perm", perm_text, "Permutation")->required();
    downset->add_flag("--list", list, "Include the sorted patterns of every level");
    auto* upset = app.add_subcommand("upset", "Permutations one longer that contain the input");
    upset->add_option("perm", perm_text, "Permutation")->required();
    upset->add_flag("--list", list, "Include the sorted permutations");
    auto* genfun = app.add_subcommand("genfun", "Exact bond generating functions and moments");
    genfun->add_option("--order", order, "Truncation order in z")->capture_default_str()->check(CLI::NonNegativeNumber);
    genfun->add_option("--series", series, "Which series to print")
        ->check(CLI::IsMember({"F", "G", "H"}))
        ->capture_default_str();
    genfun->add_flag("--no-bonds", no_bonds, "Print F(z,0), the bond-free counts");
    genfun->add_flag("--moments", moments, "Exact bond and pattern-count moments per n");
    genfun->add_option("--factorial-moment", factorial_order, "Print E[X(X-1)...(X-r+1)] for r = this value")
        ->check(CLI::PositiveNumber);
    auto* construct = app.add_subcommand("construct", "Slanted-grid permutation with minimum gap k");
    construct->add_option("--k", k, "Gap parameter (>= 3)")->required();
    construct->add_flag("--minimality", minimality, "Also scan shorter permutations (k <= 4)");
    auto* montecarlo = app.add_subcommand("montecarlo", "Sampled bond statistics");
    montecarlo->add_option("--n", n, "Permutation length")->required();
    montecarlo->add_option("--samples", samples, "Number of samples")->capture_default_str();
    montecarlo->add_option("--seed", seed, "64-bit seed")->capture_default_str();
    auto* search = app.add_subcommand("search", "Permutations of length n with the largest downset");
    search->add_option("--n", n, "Permutation length")->required();
    auto* verify = app.add_subcommand("verify", "Run an invariant suite");
    verify->add_option("--suite", suite, "Suite name")->required()->check(CLI::IsMember(verify_suite_names()));
    for (auto* sub : {analyze, patterns, downset, upset, genfun, construct, montecarlo, search, verify}) {
      add_common(sub);
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
      out_ << app.help();
      return ok;
    } catch (const CLI::CallForAllHelp&) {
      out_ << app.help("", CLI::AppFormatMode::All);
      return ok;
    } catch (const CLI::CallForVersion&) {
      out_ << version << "\n";
      return ok;
    } catch (const CLI::ParseError& e) {
      err_ << "error: " << e.what() << "\n";
      return usage;
    }

    try {
      if (*analyze) return cmd_analyze(parse_permutation(perm_text));
      if (*patterns) {
        const Permutation p = parse_permutation(perm_text);
        return level >= 0 ? cmd_patterns_level(p, level) : cmd_downset(p, list, "patterns");
      }
      if (*downset) return cmd_downset(parse_permutation(perm_text), list, "downset");
      if (*upset) return cmd_upset(parse_permutation(perm_text), list);
      if (*genfun) return cmd_genfun(order, series, no_bonds, moments, factorial_order);
      if (*construct) return cmd_construct(k, minimality);
      if (*montecarlo) return cmd_montecarlo(n, samples, seed);
      if (*search) return cmd_search(n);
      if (*verify) return cmd_verify(suite);
    } catch (const Infeasible& e) {
      err_ << "error: " << e.what() << "\n";
      return infeasible;
    } catch (const InvalidArgument& e) {
      err_ << "error: " << e.what() << "\n";
      return usage;
    }
    return usage;
  }

 private:
  json envelope(const std::string& command, json inputs, json result) const {
    return json{{"command", command}, {"inputs", std::move(inputs)}, {"result", std::move(result)}, {"version", version}};
  }

  int emit(const json& doc, int code = ok) {
    out_ << doc.dump(2) << "\n";
    return code;
  }

  bool csv() const { return opts_.format == "csv"; }

  int csv_unsupported(const std::string& command) {
    err_ << "error: --format csv is not supported by '" << command << "'\n";
    return usage;
  }

  void guard_enumeration(const Permutation& p) const {
    if (p.size() > max_enumeration_length && !opts_.force) {
      throw Infeasible("enumeration over a permutation of length " + std::to_string(p.size()) +
                       " exceeds " + std::to_string(max_enumeration_length) + "; pass --force to override");
    }
  }

  int cmd_analyze(const Permutation& p) {
    if (csv()) return csv_unsupported("analyze");
    const RunDecomposition runs = run_decomposition(p);
    json result{{"perm", to_json(p)}, {"n", p.size()}, {"bonds", runs.bond_count}};
    json run_list = json::array();
    for (const Run& r : runs.runs) {
      run_list.push_back({{"start", r.start}, {"length", r.length}, {"direction", to_string(r.direction)}});
    }
    result["runs"] = run_list;
    if (p.size() >= 2) {
      const GapReport g = gap_report(p);
      result["min_gap"] = g.min_gap;
      json witnesses = json::array();
      for (auto [i, j] : g.witnesses) witnesses.push_back({i, j});
      result["witnesses"] = witnesses;
      json w = json::array();
      for (auto [kk, count] : g.w) w.push_back({{"k", kk}, {"distance", kk + 1}, {"pairs", count}});
      result["w"] = w;
      result["coatoms_fast"] = coatom_count_fast(p);
      result["coatoms_enumerated"] = p.size() <= PatternKey::max_length ? json(coatoms(p).size()) : json(nullptr);
    } else {
      result["min_gap"] = nullptr;
      result["witnesses"] = json::array();
      result["w"] = json::array();
      result["coatoms_fast"] = nullptr;
      result["coatoms_enumerated"] = nullptr;
    }
    if (opts_.verbose) {
      err_ << to_string(p) << ": n=" << p.size() << " bonds=" << runs.bond_count;
      if (p.size() >= 2) err_ << " min_gap=" << result["min_gap"] << " coatoms=" << result["coatoms_fast"];
      err_ << "\n";
    }
    return emit(envelope("analyze", {{"perm", to_json(p)}}, result));
  }

  int cmd_patterns_level(const Permutation& p, int level) {
    guard_enumeration(p);
    const PatternSet set = patterns_at_level(p, level);
    const std::vector<Permutation> sorted = set.sorted();
    if (csv()) {
      out_ << "pattern\n";
      for (const auto& q : sorted) out_ << to_string(q) << "\n";
      return ok;
    }
    json result{{"level", level}, {"pattern_length", p.size() - level}, {"count", set.size()}};
    if (level >= 1 && level <= p.size() - 1 && p.size() >= 2) {
      const LevelCount fast = level_count_fast(p, level);
      result["fast"] = {{"regime", to_string(fast.regime)},
                        {"value", fast.value ? json(*fast.value) : json(nullptr)}};
    }
    result["patterns"] = to_json(sorted);
    if (opts_.verbose) err_ << "|D_" << level << "(" << to_string(p) << ")| = " << set.size() << "\n";
    return emit(envelope("patterns", {{"perm", to_json(p)}, {"level", level}}, result));
  }

  int cmd_downset(const Permutation& p, bool list, const std::string& command) {
    guard_enumeration(p);
    json levels = json::array();
    const DownsetSummary s = downset_levels(p, [&](int, const auto& keys) {
      if (!list) return;
      std::vector<Permutation> members;
      for (PatternKey key : keys) members.push_back(decode(key));
      std::sort(members.begin(), members.end());
      levels.push_back(to_json(members));
    });
    if (csv()) {
      out_ << "k,pattern_length,count\n";
      for (int k = 0; k < s.n; ++k) out_ << k << "," << s.n - k << "," << s.level_counts[k] << "\n";
      return ok;
    }
    json result{{"n", s.n}, {"level_counts", s.level_counts}, {"total", s.total}};
    if (list) result["levels"] = levels;
    if (opts_.verbose) err_ << "|D(" << to_string(p) << ")| = " << s.total << "\n";
    return emit(envelope(command, {{"perm", to_json(p)}, {"list", list}}, result));
  }

  int cmd_upset(const Permutation& q, bool list) {
    if (csv()) return csv_unsupported("upset");
    guard_enumeration(Permutation::identity(q.size() + 1));
    const PatternSet set = upset_one(q);
    const std::uint64_t len = static_cast<std::uint64_t>(q.size());
    json result{{"length", q.size() + 1}, {"count", set.size()}, {"expected", len * len + 1}};
    if (list) result["permutations"] = to_json(set.sorted());
    return emit(envelope("upset", {{"perm", to_json(q)}, {"list", list}}, result));
  }

  int cmd_genfun(int order, const std::string& which, bool no_bonds, bool moments, int factorial_order) {
    if (order > max_series_order && !opts_.force) {
      throw Infeasible("series order " + std::to_string(order) + " exceeds " + std::to_string(max_series_order) +
                       "; pass --force to override");
    }
    const BivariateSeries f = series_F(order);
    json inputs{{"order", order}, {"series", which}, {"no_bonds", no_bonds}, {"moments", moments}};
    if (factorial_order > 0) inputs["factorial_moment"] = factorial_order;
    json result{{"order", order}};

    if (no_bonds) {
      const auto seq = no_bond_sequence(f);
      if (csv()) {
        out_ << "n,coefficient\n";
        for (std::size_t i = 0; i < seq.size(); ++i) out_ << i << "," << seq[i] << "\n";
        return ok;
      }
      json arr = json::array();
      for (const auto& c : seq) arr.push_back(to_json(c));
      result["no_bond_sequence"] = arr;
      if (opts_.verbose) {
        for (std::size_t i = 0; i < seq.size(); ++i) err_ << (i ? "," : "") << seq[i];
        err_ << "\n";
      }
    }
    if (moments) {
      if (csv()) {
        out_ << "n,mean_numerator,mean_denominator,variance_numerator,variance_denominator\n";
        for (int n = 1; n <= order; ++n) {
          const MomentReport m = bond_moments_from_table(n, f);
          out_ << n << "," << numerator(m.mean) << "," << denominator(m.mean) << "," << numerator(m.variance)
               << "," << denominator(m.variance) << "\n";
        }
        return ok;
      }
      json rows = json::array();
      for (int n = 1; n <= order; ++n) {
        const MomentReport m = bond_moments_from_table(n, f);
        json row{{"n", n},
                 {"bonds", to_json(m)},
                 {"closed_form_mean", to_json(closed_form_bond_mean(n))},
                 {"closed_form_variance", to_json(closed_form_bond_variance(n))},
                 {"matches_closed_form",
                  m.mean == closed_form_bond_mean(n) && m.variance == closed_form_bond_variance(n)}};
        if (n >= 2) row["patterns"] = to_json(pattern_count_moments(n));
        rows.push_back(row);
        if (opts_.verbose) {
          err_ << "n=" << n << " E=" << rational_text(m.mean) << " (" << static_cast<double>(m.mean)
               << ") Var=" << rational_text(m.variance) << " (" << static_cast<double>(m.variance) << ")\n";
        }
      }
      result["moments"] = rows;
    }
    if (factorial_order > 0) {
      if (csv()) {
        out_ << "n,numerator,denominator\n";
        for (int n = 0; n <= order; ++n) {
          const Rational r = factorial_moment_from_table(n, f, factorial_order);
          out_ << n << "," << numerator(r) << "," << denominator(r) << "\n";
        }
        return ok;
      }
      json rows = json::array();
      for (int n = 0; n <= order; ++n) {
        rows.push_back({{"n", n}, {"value", to_json(factorial_moment_from_table(n, f, factorial_order))}});
      }
      result["factorial_moment"] = {{"r", factorial_order}, {"rows", rows}};
    }
    if (!no_bonds && !moments && factorial_order == 0) {
      const BivariateSeries s = which == "F" ? f : which == "G" ? series_G(order) : series_H(f);
      if (csv()) {
        out_ << "n,k,coefficient\n";
        for (int n = 0; n <= order; ++n) {
          for (int kk = 0; kk <= n; ++kk) out_ << n << "," << kk << "," << s.coefficient(n, kk) << "\n";
        }
        return ok;
      }
      json rows = json::array();
      for (int n = 0; n <= order; ++n) {
        json row = json::array();
        for (const auto& c : s.row(n)) row.push_back(to_json(c));
        rows.push_back(row);
      }
      result["series"] = which;
      result["rows"] = rows;
    }
    return emit(envelope("genfun", inputs, result));
  }

  int cmd_construct(int k, bool minimality) {
    if (csv()) return csv_unsupported("construct");
    const ConstructionReport r = verify_construction(k);
    json result{{"k", r.k},
                {"permutation", to_json(r.perm)},
                {"text", to_string(r.perm)},
                {"length", r.length},
                {"min_gap", r.min_gap},
                {"levels_all_distinct", r.levels_all_distinct ? json(*r.levels_all_distinct) : json(nullptr)},
                {"degenerate", r.degenerate},
                {"involution_symmetry", involution_symmetry_check(k)}};
    if (minimality) {
      const MinimalityResult m = minimality_search(k, opts_.force);
      result["minimality"] = {{"minimal", m.minimal}, {"scanned", m.scanned}, {"counterexamples", to_json(m.counterexamples)}};
    }
    if (opts_.verbose) err_ << "pi(" << k << ") = " << to_string(r.perm) << " min_gap=" << r.min_gap << "\n";
    return emit(envelope("construct", {{"k", k}, {"minimality", minimality}}, result));
  }

  int cmd_montecarlo(int n, std::uint64_t samples, std::uint64_t seed) {
    const SampleStats s = estimate_bond_stats(n, samples, seed, opts_.threads);
    if (csv()) {
      out_ << "bonds,count\n";
      for (auto [b, c] : s.histogram) out_ << b << "," << c << "\n";
      return ok;
    }
    json hist = json::array();
    for (auto [b, c] : s.histogram) hist.push_back({{"bonds", b}, {"count", c}});
    json result{{"n", s.n},
                {"samples", s.samples},
                {"seed", s.seed},
                {"generator", generator_id},
                {"histogram", hist},
                {"mean_bonds", s.mean_bonds},
                {"var_bonds", s.var_bonds},
                {"p_no_bond", s.p_no_bond}};
    json exact{{"mean_bonds", to_json(closed_form_bond_mean(n))}, {"var_bonds", to_json(closed_form_bond_variance(n))}};
    if (n <= default_series_order) {
      const BivariateSeries f = series_F(n);
      exact["p_no_bond"] = to_json(Rational(f.coefficient(n, 0), factorial(n)));
      json probs = json::array();
      for (int b = 0; b < n; ++b) probs.push_back({{"bonds", b}, {"probability", to_json(Rational(f.coefficient(n, b), factorial(n)))}});
      exact["histogram"] = probs;
    }
    result["exact"] = exact;
    if (opts_.verbose) {
      err_ << "n=" << n << " samples=" << s.samples << " mean=" << s.mean_bonds << " (exact "
           << static_cast<double>(closed_form_bond_mean(n)) << ") var=" << s.var_bonds << " (exact "
           << static_cast<double>(closed_form_bond_variance(n)) << ") P(no bond)=" << s.p_no_bond << "\n";
    }
    return emit(envelope("montecarlo", {{"n", n}, {"samples", samples}, {"seed", seed}, {"threads", opts_.threads}}, result));
  }

  int cmd_search(int n) {
    if (csv()) return csv_unsupported("search");
    SearchOptions so;
    so.threads = opts_.threads;
    so.allow_large = opts_.force;
    const SearchResult r = search_max_patterns(n, so);
    json result{{"n", r.n}, {"max_total", r.max_total}, {"count", r.argmax.size()}, {"argmax", to_json(r.argmax)}};
    if (opts_.verbose) err_ << "max |D(p)| over S_" << n << " = " << r.max_total << " (" << r.argmax.size() << " maximizers)\n";
    return emit(envelope("search", {{"n", n}}, result));
  }

  int cmd_verify(const std::string& suite) {
    if (csv()) return csv_unsupported("verify");
    const VerifyReport report = run_verify_suite(suite);
    json checks = json::array();
    for (const auto& c : report.checks) {
      checks.push_back({{"name", c.name}, {"passed", c.passed}, {"cases", c.cases}, {"failures", c.failures}, {"examples", c.examples}});
      if (opts_.verbose) {
        err_ << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.cases << " cases, " << c.failures << " failures)\n";
      }
    }
    const bool passed = report.passed();
    return emit(envelope("verify", {{"suite", suite}}, {{"suite", suite}, {"passed", passed}, {"checks", checks}}),
                passed ? ok : verification_failed);
  }

  std::ostream& out_;
  std::ostream& err_;
  Options opts_;
};

/// Runs the CLI with arguments excluding the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return Runner(out, err).run(args);
}

}  // namespace permpat::cli
