#pragma once

#include "sktsp/numeric.hpp"
#include "sktsp/simplex.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace sktsp {

// Increasing sequence of bids from [n].
using BidSequence = std::vector<int>;

// Sum of bids until the first one >= T; nullopt when no bid covers T.
inline std::optional<Int> bid_cost(const BidSequence& seq, int threshold) {
  if (seq.empty()) throw std::invalid_argument("bid_cost: empty sequence");
  Int cost(0);
  for (int b : seq) {
    cost += b;
    if (b >= threshold) return cost;
  }
  return std::nullopt;
}

// All 2^n - 1 nonempty increasing sequences on [n]; with `covering_only`,
// keeps those whose last (largest) bid is n, so every threshold is covered.
inline std::vector<BidSequence> enumerate_gamma(int n, bool covering_only = false) {
  if (n < 1 || n > 16) throw std::invalid_argument("enumerate_gamma: n out of range");
  std::vector<BidSequence> out;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (covering_only && !(mask & (1u << (n - 1)))) continue;
    BidSequence seq;
    for (int b = 1; b <= n; ++b)
      if (mask & (1u << (b - 1))) seq.push_back(b);
    out.push_back(std::move(seq));
  }
  return out;
}

template <typename T>
struct MinimaxSides {
  T lhs{};  // max_p min_I  E_p[C(I,T)] / E_p[T]
  T rhs{};  // min_pi max_T E_pi[C(I,T)] / T
  std::vector<T> p;             // optimal threshold distribution
  std::vector<T> pi;            // optimal sequence distribution
};

// Independently solves both sides of the ratio minimax for a non-negative
// cost matrix C indexed [sequence][threshold]; thresholds are 1..n.
// Both sides reduce to the zero-sum game with payoff C(I,T)/T: the left by
// the substitution q_T = p_T T / sum(p T), the right directly.
template <typename T>
MinimaxSides<T> minimax_sides(const std::vector<std::vector<T>>& C,
                              const T& eps = T(0)) {
  const std::size_t rows = C.size();
  if (rows == 0) throw std::invalid_argument("minimax_sides: empty matrix");
  const std::size_t n = C[0].size();
  for (const auto& row : C)
    for (const auto& v : row)
      if (v < 0) throw std::invalid_argument("minimax_sides: negative entry");

  // Shift keeps all payoffs positive; game value is shift-equivariant.
  T shift(1);
  std::vector<std::vector<T>> M(n, std::vector<T>(rows));
  T mmax(0);
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t i = 0; i < rows; ++i) {
      M[t][i] = C[i][t] / T(static_cast<int>(t) + 1) + shift;
      if (M[t][i] > mmax) mmax = M[t][i];
    }

  MinimaxSides<T> out;
  auto row_side = solve_zero_sum_rowmax<T>(M, eps);
  out.lhs = row_side.value - shift;
  // p_T proportional to q_T / T.
  out.p.resize(n);
  T norm(0);
  for (std::size_t t = 0; t < n; ++t) {
    out.p[t] = row_side.row_strategy[t] / T(static_cast<int>(t) + 1);
    norm += out.p[t];
  }
  for (auto& v : out.p) v /= norm;

  // Column side: the minimizing player of M is the maximizing row player of
  // the reflected game s - M^T.
  T s = mmax + T(1);
  std::vector<std::vector<T>> N(rows, std::vector<T>(n));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t t = 0; t < n; ++t) N[i][t] = s - M[t][i];
  auto col_side = solve_zero_sum_rowmax<T>(N, eps);
  out.rhs = s - col_side.value - shift;
  out.pi = col_side.row_strategy;
  return out;
}

struct BiddingLPResult {
  int n = 0;
  bool exact = false;         // rational pivoting (n <= 8)
  Rat value_rat;              // meaningful when exact
  std::vector<Rat> p_rat;     // meaningful when exact
  double value = 0.0;
  std::vector<double> p;                      // worst-case distribution on [n]
  std::vector<std::pair<BidSequence, double>> sequence_dist;  // optimal pi
  double duality_gap = 0.0;
};

// Value and optimizers of the online-bidding minimax on [n]. Sequences that
// fail to cover some threshold are never optimal, so the LP runs over
// covering sequences only.
inline BiddingLPResult solve_bidding_lp(int n, int exact_cutoff = 8) {
  if (n < 1 || n > 14) throw std::invalid_argument("solve_bidding_lp: n out of range");
  auto gamma = enumerate_gamma(n, /*covering_only=*/true);
  BiddingLPResult res;
  res.n = n;
  res.exact = n <= exact_cutoff;

  if (res.exact) {
    std::vector<std::vector<Rat>> C(gamma.size(), std::vector<Rat>(n));
    for (std::size_t i = 0; i < gamma.size(); ++i)
      for (int t = 1; t <= n; ++t) C[i][t - 1] = Rat(*bid_cost(gamma[i], t));
    auto sides = minimax_sides<Rat>(C);
    res.value_rat = sides.lhs;
    res.value = static_cast<double>(Real(sides.lhs));
    res.duality_gap = std::abs(
        static_cast<double>(Real(sides.lhs - sides.rhs)));
    res.p_rat = sides.p;
    for (const auto& v : sides.p) res.p.push_back(static_cast<double>(Real(v)));
    for (std::size_t i = 0; i < gamma.size(); ++i) {
      double w = static_cast<double>(Real(sides.pi[i]));
      if (w > 0) res.sequence_dist.emplace_back(gamma[i], w);
    }
    return res;
  }

  std::vector<std::vector<double>> C(gamma.size(), std::vector<double>(n));
  for (std::size_t i = 0; i < gamma.size(); ++i)
    for (int t = 1; t <= n; ++t)
      C[i][t - 1] = static_cast<double>(*bid_cost(gamma[i], t));
  auto sides = minimax_sides<double>(C, 1e-12);
  res.value = sides.lhs;
  res.duality_gap = std::abs(sides.lhs - sides.rhs);
  res.p = sides.p;
  for (std::size_t i = 0; i < gamma.size(); ++i)
    if (sides.pi[i] > 1e-12) res.sequence_dist.emplace_back(gamma[i], sides.pi[i]);
  return res;
}

struct MinimaxVerdict {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

// Lemma check on an arbitrary non-negative matrix C[sequence][threshold].
inline MinimaxVerdict verify_minimax(const std::vector<std::vector<double>>& C) {
  auto sides = minimax_sides<double>(C, 1e-12);
  MinimaxVerdict v;
  v.lhs = sides.lhs;
  v.rhs = sides.rhs;
  v.pass = std::abs(v.lhs - v.rhs) <= 1e-9 * std::max(1.0, v.rhs);
  return v;
}

}  // namespace sktsp
