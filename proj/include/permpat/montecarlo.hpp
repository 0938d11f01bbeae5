#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "bonds.hpp"
#include "parallel.hpp"
#include "permutation.hpp"

namespace permpat {

/// Identifies the sampling scheme so results can be replicated elsewhere.
inline constexpr const char* generator_id = "mt19937_64/splitmix64-chunk8192/fisher-yates-rejection";
inline constexpr std::uint64_t samples_per_chunk = 8192;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of the private stream that draws chunk `chunk` of a run seeded with `seed`.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t chunk) {
  return splitmix64(splitmix64(seed) ^ splitmix64(chunk + 1));
}

/// Uniform integer in [0, bound) by rejection; bound >= 1.
inline std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = gen();
  } while (x >= limit);
  return x % bound;
}

/// Uniform permutation of length n (Fisher-Yates).
inline Permutation sample_permutation(int n, std::mt19937_64& gen) {
  std::vector<int> e(static_cast<std::size_t>(n));
  std::iota(e.begin(), e.end(), 1);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(uniform_below(gen, static_cast<std::uint64_t>(i) + 1));
    std::swap(e[i], e[j]);
  }
  return Permutation::from_trusted(std::move(e));
}

struct SampleStats {
  int n = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double mean_bonds = 0.0;
  double var_bonds = 0.0;  // population variance of the histogram
  double p_no_bond = 0.0;
  std::map<int, std::uint64_t> histogram;  // bond count -> occurrences
};

/// Recomputes mean, variance and P(no bond) from the histogram.
inline void finalize(SampleStats& s) {
  std::uint64_t total = 0;
  long double sum = 0;
  long double sum_sq = 0;
  for (auto [bonds, count] : s.histogram) {
    total += count;
    sum += static_cast<long double>(bonds) * count;
    sum_sq += static_cast<long double>(bonds) * bonds * count;
  }
  s.samples = total;
  if (total == 0) return;
  const long double mean = sum / total;
  s.mean_bonds = static_cast<double>(mean);
  s.var_bonds = static_cast<double>(sum_sq / total - mean * mean);
  auto it = s.histogram.find(0);
  s.p_no_bond = it == s.histogram.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(total);
}

/// Bond-count histogram over `samples` uniform n-permutations.
///
/// Samples are drawn in fixed chunks, each from its own stream, so the result
/// depends only on (n, samples, seed) and not on `threads`.
inline SampleStats estimate_bond_stats(int n, std::uint64_t samples, std::uint64_t seed,
                                       unsigned threads = 1) {
  if (n < 2) throw InvalidArgument("estimate_bond_stats: need n >= 2");
  if (samples < 1) throw InvalidArgument("estimate_bond_stats: need samples >= 1");
  const std::uint64_t chunks = (samples + samples_per_chunk - 1) / samples_per_chunk;
  std::vector<std::vector<std::uint64_t>> partial(chunks, std::vector<std::uint64_t>(static_cast<std::size_t>(n), 0));
  parallel_chunks(chunks, threads, [&](std::size_t c) {
    std::mt19937_64 gen(stream_seed(seed, c));
    const std::uint64_t begin = c * samples_per_chunk;
    const std::uint64_t end = std::min(samples, begin + samples_per_chunk);
    auto& hist = partial[c];
    for (std::uint64_t s = begin; s < end; ++s) ++hist[bond_count(sample_permutation(n, gen))];
  });

  SampleStats stats;
  stats.n = n;
  stats.seed = seed;
  for (const auto& hist : partial) {
    for (int k = 0; k < n; ++k) {
      if (hist[k] != 0) stats.histogram[k] += hist[k];
    }
  }
  finalize(stats);
  return stats;
}

}  // namespace permpat
