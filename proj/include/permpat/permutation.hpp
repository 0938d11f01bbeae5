#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <compare>
#include <limits>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace permpat {

/// A permutation of {1..n} in one-line notation.
///
/// Positions and values are 1-indexed in every public accessor; `entries()`
/// exposes the raw value sequence (index 0 holds p_1).
class Permutation {
 public:
  using value_type = int;

  Permutation() = default;

  /// Validates that `entries` is a bijection onto {1..n}.
  explicit Permutation(std::vector<int> entries) : entries_(std::move(entries)) {
    std::vector<bool> seen(entries_.size() + 1, false);
    for (int v : entries_) {
      if (v < 1 || v > static_cast<int>(entries_.size())) {
        throw InvalidArgument("value " + std::to_string(v) + " out of range 1.." +
                              std::to_string(entries_.size()));
      }
      if (seen[v]) throw InvalidArgument("duplicate value " + std::to_string(v));
      seen[v] = true;
    }
  }

  Permutation(std::initializer_list<int> entries)
      : Permutation(std::vector<int>(entries)) {}

  static Permutation identity(int n) {
    std::vector<int> e(static_cast<std::size_t>(n));
    std::iota(e.begin(), e.end(), 1);
    return from_trusted(std::move(e));
  }

  // Skips validation; callers guarantee the bijection invariant.
  static Permutation from_trusted(std::vector<int> entries) {
    Permutation p;
    p.entries_ = std::move(entries);
    return p;
  }

  int size() const { return static_cast<int>(entries_.size()); }
  bool empty() const { return entries_.empty(); }

  /// p_i for 1 <= i <= n.
  int operator()(int i) const { return entries_[static_cast<std::size_t>(i - 1)]; }

  /// Bounds-checked p_i.
  int at(int i) const {
    check_position(i);
    return (*this)(i);
  }

  std::span<const int> entries() const { return entries_; }

  void check_position(int i) const {
    if (i < 1 || i > size()) {
      throw InvalidArgument("position " + std::to_string(i) + " out of range 1.." +
                            std::to_string(size()));
    }
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.entries_ <=> b.entries_;
  }

 private:
  std::vector<int> entries_;
};

/// Contiguous digits when n <= 9, otherwise comma separated.
inline std::string to_string(const Permutation& p) {
  const bool compact = p.size() <= 9;
  std::string out;
  for (int i = 1; i <= p.size(); ++i) {
    if (!compact && i > 1) out += ',';
    out += std::to_string(p(i));
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Permutation& p) {
  return os << to_string(p);
}

/// Parses "4732615", "2,4,1,3", "2 4 1 3" or "[2, 4, 1, 3]".
///
/// A string with no delimiter is read one digit per entry. Empty text is the
/// empty permutation.
inline Permutation parse_permutation(std::string_view text) {
  auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
  while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
  if (!text.empty() && text.front() == '[') {
    if (text.back() != ']') throw InvalidArgument("unbalanced '[' in permutation text");
    text = text.substr(1, text.size() - 2);
    while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
    while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
  }
  if (text.empty()) return Permutation{};

  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != ',' && !is_space(c)) {
      throw InvalidArgument(std::string("unexpected character '") + c + "' in permutation text");
    }
  }

  std::vector<int> values;
  const bool delimited = text.find_first_of(", \t\r\n") != std::string_view::npos;
  if (!delimited) {
    for (char c : text) values.push_back(c - '0');
  } else {
    // Tokens are separated by a comma (with optional surrounding blanks) or by blanks alone.
    std::size_t pos = 0;
    while (true) {
      while (pos < text.size() && is_space(text[pos])) ++pos;
      std::size_t end = pos;
      while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
      if (end == pos) throw InvalidArgument("empty token in permutation text");
      int v = 0;
      auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + end, v);
      if (ec != std::errc{}) throw InvalidArgument("integer out of range in permutation text");
      values.push_back(v);
      pos = end;
      while (pos < text.size() && is_space(text[pos])) ++pos;
      if (pos == text.size()) break;
      if (text[pos] == ',') {
        ++pos;
        if (pos == text.size()) throw InvalidArgument("empty token in permutation text");
      }
    }
  }
  for (int v : values) {
    if (v == 0) throw InvalidArgument("permutation entries must be positive");
  }
  return Permutation(std::move(values));
}

/// del(p, i): remove the i-th entry and relabel to {1..n-1}.
inline Permutation delete_entry(const Permutation& p, int i) {
  p.check_position(i);
  const int removed = p(i);
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(p.size() - 1));
  for (int pos = 1; pos <= p.size(); ++pos) {
    if (pos == i) continue;
    const int v = p(pos);
    out.push_back(v > removed ? v - 1 : v);
  }
  return Permutation::from_trusted(std::move(out));
}

/// del(p; S): remove every position in S, folding from the largest index down.
inline Permutation delete_set(const Permutation& p, std::span<const int> positions) {
  std::vector<int> sorted(positions.begin(), positions.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidArgument("duplicate position in deletion set");
  }
  for (int i : sorted) p.check_position(i);
  Permutation out = p;
  for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) out = delete_entry(out, *it);
  return out;
}

inline Permutation delete_set(const Permutation& p, std::initializer_list<int> positions) {
  return delete_set(p, std::span<const int>(positions.begin(), positions.size()));
}

/// ins(q, j, k): place value k immediately left of the j-th entry of q (j = n
/// appends), bumping values >= k. The result has length n = |q| + 1.
inline Permutation insert_entry(const Permutation& q, int j, int k) {
  const int n = q.size() + 1;
  if (j < 1 || j > n) {
    throw InvalidArgument("insert position " + std::to_string(j) + " out of range 1.." +
                          std::to_string(n));
  }
  if (k < 1 || k > n) {
    throw InvalidArgument("insert value " + std::to_string(k) + " out of range 1.." +
                          std::to_string(n));
  }
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int pos = 1; pos <= q.size(); ++pos) {
    if (pos == j) out.push_back(k);
    const int v = q(pos);
    out.push_back(v >= k ? v + 1 : v);
  }
  if (j == n) out.push_back(k);
  return Permutation::from_trusted(std::move(out));
}

/// Relabels a sequence of distinct integers to its order pattern in {1..m}.
inline Permutation standardize(std::span<const int> values) {
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return values[a] < values[b]; });
  std::vector<int> out(values.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) out[order[rank]] = static_cast<int>(rank) + 1;
  return Permutation::from_trusted(std::move(out));
}

/// True iff some subsequence of p is order-isomorphic to q.
inline bool contains_pattern(const Permutation& p, const Permutation& q) {
  const int n = p.size();
  const int m = q.size();
  if (m > n) return false;
  if (m == 0) return true;
  std::vector<int> chosen(static_cast<std::size_t>(m));

  // Place q_t at some p index after chosen[t-1]; every prefix must already be
  // order-isomorphic to the matching prefix of q.
  auto place = [&](auto&& self, int t, int from) -> bool {
    if (t == m) return true;
    for (int idx = from; idx <= n - (m - t - 1); ++idx) {
      const int v = p(idx);
      bool ok = true;
      for (int s = 0; s < t && ok; ++s) {
        ok = (p(chosen[s]) < v) == (q(s + 1) < q(t + 1));
      }
      if (!ok) continue;
      chosen[t] = idx;
      if (self(self, t + 1, idx + 1)) return true;
    }
    return false;
  };
  return place(place, 0, 1);
}

inline Permutation reverse(const Permutation& p) {
  std::vector<int> e(p.entries().rbegin(), p.entries().rend());
  return Permutation::from_trusted(std::move(e));
}

inline Permutation complement(const Permutation& p) {
  std::vector<int> e;
  e.reserve(static_cast<std::size_t>(p.size()));
  for (int v : p.entries()) e.push_back(p.size() + 1 - v);
  return Permutation::from_trusted(std::move(e));
}

inline Permutation inverse(const Permutation& p) {
  std::vector<int> e(static_cast<std::size_t>(p.size()));
  for (int i = 1; i <= p.size(); ++i) e[static_cast<std::size_t>(p(i) - 1)] = i;
  return Permutation::from_trusted(std::move(e));
}

/// (a ∘ b)(i) = a(b(i)).
inline Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw InvalidArgument("compose: length mismatch");
  std::vector<int> e;
  e.reserve(static_cast<std::size_t>(a.size()));
  for (int i = 1; i <= b.size(); ++i) e.push_back(a(b(i)));
  return Permutation::from_trusted(std::move(e));
}

/// Visits every permutation of length n in lexicographic order.
template <typename Fn>
void for_each_permutation(int n, Fn&& fn) {
  std::vector<int> e(static_cast<std::size_t>(n));
  std::iota(e.begin(), e.end(), 1);
  do {
    fn(Permutation::from_trusted(e));
  } while (std::next_permutation(e.begin(), e.end()));
}

/// Exact C(n, k) for results that fit in 64 bits.
inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned>(i);
    if (r > std::numeric_limits<std::uint64_t>::max()) {
      throw InvalidArgument("binomial(" + std::to_string(n) + ", " + std::to_string(k) +
                            ") exceeds 64 bits");
    }
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace permpat
