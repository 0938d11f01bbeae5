#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "error.hpp"

namespace permpat {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Truncated power series in z with polynomial coefficients in u.
///
/// Only monomials z^n u^k with 0 <= k <= n <= order are representable; every
/// series built here (bond counts never reach the length) lives in that
/// triangle, and multiplication preserves it.
class BivariateSeries {
 public:
  explicit BivariateSeries(int order) : order_(order) {
    if (order < 0) throw InvalidArgument("series order must be >= 0");
    rows_.resize(static_cast<std::size_t>(order + 1));
    for (int n = 0; n <= order; ++n) rows_[n].assign(static_cast<std::size_t>(n + 1), BigInt(0));
  }

  int order() const { return order_; }

  /// [z^n u^k]; zero above the diagonal.
  BigInt coefficient(int n, int k) const {
    check_row(n);
    if (k < 0 || k > n) return 0;
    return rows_[n][k];
  }

  BigInt& at(int n, int k) {
    check_row(n);
    if (k < 0 || k > n) {
      throw InvalidArgument("series coefficient (" + std::to_string(n) + ", " + std::to_string(k) +
                            ") outside the k <= n triangle");
    }
    return rows_[n][k];
  }

  const std::vector<BigInt>& row(int n) const {
    check_row(n);
    return rows_[n];
  }

  BigInt row_sum(int n) const {
    BigInt s = 0;
    for (const BigInt& c : row(n)) s += c;
    return s;
  }

  BivariateSeries& operator+=(const BivariateSeries& o) {
    check_same_order(o);
    for (int n = 0; n <= order_; ++n) {
      for (int k = 0; k <= n; ++k) rows_[n][k] += o.rows_[n][k];
    }
    return *this;
  }

  BivariateSeries& operator*=(const BigInt& c) {
    for (auto& r : rows_) {
      for (auto& x : r) x *= c;
    }
    return *this;
  }

  friend BivariateSeries operator+(BivariateSeries a, const BivariateSeries& b) { return a += b; }

  friend BivariateSeries operator*(const BivariateSeries& a, const BivariateSeries& b) {
    a.check_same_order(b);
    const int order = a.order_;
    BivariateSeries out(order);
    for (int na = 0; na <= order; ++na) {
      const auto& ra = a.rows_[na];
      for (int ka = 0; ka <= na; ++ka) {
        if (ra[ka] == 0) continue;
        for (int nb = 0; na + nb <= order; ++nb) {
          const auto& rb = b.rows_[nb];
          auto& dest = out.rows_[na + nb];
          for (int kb = 0; kb <= nb; ++kb) {
            if (rb[kb] != 0) dest[ka + kb] += ra[ka] * rb[kb];
          }
        }
      }
    }
    return out;
  }

  /// The series with u replaced by u + shift.
  BivariateSeries shift_u(const BigInt& shift) const {
    BivariateSeries out(order_);
    for (int n = 0; n <= order_; ++n) {
      // (u + c)^j = sum_k C(j, k) c^(j-k) u^k
      for (int j = 0; j <= n; ++j) {
        if (rows_[n][j] == 0) continue;
        BigInt binom = 1;
        for (int k = j; k >= 0; --k) {
          // binom = C(j, k); walk k downward from j
          BigInt power = boost::multiprecision::pow(shift, static_cast<unsigned>(j - k));
          out.rows_[n][k] += rows_[n][j] * binom * power;
          binom = binom * k / (j - k + 1);
        }
      }
    }
    return out;
  }

  friend bool operator==(const BivariateSeries&, const BivariateSeries&) = default;

 private:
  void check_row(int n) const {
    if (n < 0 || n > order_) {
      throw InvalidArgument("z-degree " + std::to_string(n) + " exceeds series order " +
                            std::to_string(order_));
    }
  }
  void check_same_order(const BivariateSeries& o) const {
    if (o.order_ != order_) throw InvalidArgument("series order mismatch");
  }

  int order_;
  std::vector<std::vector<BigInt>> rows_;
};

inline constexpr int default_series_order = 30;

inline BigInt factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

namespace detail {

// sum_{m=0}^{order} m! * block^m; block has zero constant term, so higher m
// cannot reach z-degree <= order.
inline BivariateSeries factorial_composition(const BivariateSeries& block) {
  const int order = block.order();
  BivariateSeries sum(order);
  BivariateSeries power(order);
  power.at(0, 0) = 1;
  BigInt m_factorial = 1;
  for (int m = 0; m <= order; ++m) {
    if (m > 0) {
      m_factorial *= m;
      power = power * block;
    }
    BivariateSeries term = power;
    term *= m_factorial;
    sum += term;
  }
  return sum;
}

// z + 2 z^2 x / (1 - z x) with x = u + offset, expanded as
// z + sum_{t>=0} 2 z^{t+2} x^{t+1}.
inline BivariateSeries run_block(int order, int offset) {
  BivariateSeries block(order);
  if (order >= 1) block.at(1, 0) = 1;
  for (int t = 0; t + 2 <= order; ++t) {
    const int power = t + 1;
    // (u + offset)^power
    BigInt binom = 1;
    for (int k = 0; k <= power; ++k) {
      block.at(t + 2, k) += 2 * binom * boost::multiprecision::pow(BigInt(offset), static_cast<unsigned>(power - k));
      binom = binom * (power - k) / (k + 1);
    }
  }
  return block;
}

}  // namespace detail

/// F(z, u): a_{n,k} = number of n-permutations with exactly k bonds.
inline BivariateSeries series_F(int order = default_series_order) {
  return detail::factorial_composition(detail::run_block(order, -1));
}

/// G(z, u): b_{n,k} = number of n-permutations with k distinguished bonds.
inline BivariateSeries series_G(int order = default_series_order) {
  return detail::factorial_composition(detail::run_block(order, 0));
}

/// H(z, u) = F(zu, 1/u): d_{n,k} = number of n-permutations with exactly k
/// distinct (n-1)-patterns, i.e. d_{n,k} = a_{n,n-k}.
inline BivariateSeries series_H(const BivariateSeries& f) {
  BivariateSeries h(f.order());
  for (int n = 0; n <= f.order(); ++n) {
    for (int k = 0; k <= n; ++k) h.at(n, k) = f.coefficient(n, n - k);
  }
  return h;
}

inline BivariateSeries series_H(int order = default_series_order) { return series_H(series_F(order)); }

/// F(z, 0): bond-free permutation counts a_{0,0}, ..., a_{N,0}.
inline std::vector<BigInt> no_bond_sequence(const BivariateSeries& f) {
  std::vector<BigInt> out;
  for (int n = 0; n <= f.order(); ++n) out.push_back(f.coefficient(n, 0));
  return out;
}

inline std::vector<BigInt> no_bond_sequence(int order) { return no_bond_sequence(series_F(order)); }

struct MomentReport {
  int n = 0;
  Rational mean;
  Rational variance;
  Rational second_factorial_moment;
};

/// E[X(X-1)...(X-r+1)] for X = bond count on S_n, from the coefficient row.
inline Rational factorial_moment_from_table(int n, const BivariateSeries& table, int r) {
  if (n < 0 || n > table.order()) {
    throw InvalidArgument("n = " + std::to_string(n) + " exceeds table order " + std::to_string(table.order()));
  }
  if (r < 0) throw InvalidArgument("factorial moment order must be >= 0");
  BigInt sum = 0;
  for (int k = 0; k <= n; ++k) {
    BigInt falling = 1;
    for (int i = 0; i < r; ++i) falling *= (k - i);
    sum += falling * table.coefficient(n, k);
  }
  return Rational(sum, factorial(n));
}

inline MomentReport bond_moments_from_table(int n, const BivariateSeries& table) {
  MomentReport m;
  m.n = n;
  m.mean = factorial_moment_from_table(n, table, 1);
  m.second_factorial_moment = factorial_moment_from_table(n, table, 2);
  m.variance = m.second_factorial_moment + m.mean - m.mean * m.mean;
  return m;
}

/// E[bonds] = 2(n-1)/n.
inline Rational closed_form_bond_mean(int n) {
  if (n < 1) throw InvalidArgument("closed_form_bond_mean: need n >= 1");
  return Rational(2 * (n - 1), n);
}

/// E[bonds (bonds - 1)] = 4 (n-2)! (n-2)^2 / n!, which vanishes for n < 2.
inline Rational closed_form_bond_second_factorial_moment(int n) {
  if (n < 1) throw InvalidArgument("closed_form_bond_second_factorial_moment: need n >= 1");
  if (n < 2) return Rational(0);
  return Rational(4 * (n - 2) * (n - 2), n * (n - 1));
}

/// Var[bonds] = 4(n-2)^2/(n(n-1)) + 2(n-1)/n - 4(n-1)^2/n^2.
inline Rational closed_form_bond_variance(int n) {
  const Rational mean = closed_form_bond_mean(n);
  return closed_form_bond_second_factorial_moment(n) + mean - mean * mean;
}

/// Moments of the number of distinct (n-1)-patterns, n - bonds.
inline MomentReport pattern_count_moments(int n) {
  if (n < 2) throw InvalidArgument("pattern_count_moments: need n >= 2");
  MomentReport m;
  m.n = n;
  m.mean = Rational(n) - closed_form_bond_mean(n);
  m.variance = closed_form_bond_variance(n);
  m.second_factorial_moment = m.variance + m.mean * m.mean - m.mean;
  return m;
}

}  // namespace permpat
