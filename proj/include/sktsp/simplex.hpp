#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

namespace sktsp {

// Dense tableau simplex for  max c.x  s.t.  A x <= b, x >= 0  with b >= 0,
// so the slack basis is feasible. Bland's rule; exact when T is a rational
// type, and cycling-safe either way.
template <typename T>
struct SimplexResult {
  T objective{};
  std::vector<T> x;
  std::vector<T> dual;  // one multiplier per constraint
  bool bounded = true;
};

template <typename T>
SimplexResult<T> simplex_max(const std::vector<std::vector<T>>& A,
                             const std::vector<T>& b, const std::vector<T>& c,
                             const T& eps = T(0)) {
  const std::size_t m = A.size();
  const std::size_t n = c.size();
  for (const auto& bi : b)
    if (bi < 0) throw std::invalid_argument("simplex_max: b must be >= 0");

  // Columns: n structural + m slacks + rhs.
  std::vector<std::vector<T>> tab(m + 1, std::vector<T>(n + m + 1, T(0)));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) tab[i][j] = A[i][j];
    tab[i][n + i] = T(1);
    tab[i][n + m] = b[i];
  }
  for (std::size_t j = 0; j < n; ++j) tab[m][j] = -c[j];

  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  for (;;) {
    // Bland: smallest-index column with negative reduced cost.
    std::size_t pivot_col = n + m;
    for (std::size_t j = 0; j < n + m; ++j) {
      if (tab[m][j] < -eps) {
        pivot_col = j;
        break;
      }
    }
    if (pivot_col == n + m) break;  // optimal

    std::optional<std::size_t> pivot_row;
    for (std::size_t i = 0; i < m; ++i) {
      if (tab[i][pivot_col] > eps) {
        if (!pivot_row) {
          pivot_row = i;
        } else {
          const T& lhs = tab[i][n + m];
          const T& rhs = tab[*pivot_row][n + m];
          T cur = lhs * tab[*pivot_row][pivot_col];
          T prev = rhs * tab[i][pivot_col];
          if (cur < prev ||
              (cur == prev && basis[i] < basis[*pivot_row]))
            pivot_row = i;
        }
      }
    }
    if (!pivot_row) {
      SimplexResult<T> res;
      res.bounded = false;
      return res;
    }

    std::size_t r = *pivot_row;
    T piv = tab[r][pivot_col];
    for (auto& cell : tab[r]) cell /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == r) continue;
      T f = tab[i][pivot_col];
      if (f == 0) continue;
      for (std::size_t j = 0; j <= n + m; ++j) tab[i][j] -= f * tab[r][j];
    }
    basis[r] = pivot_col;
  }

  SimplexResult<T> res;
  res.x.assign(n, T(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) res.x[basis[i]] = tab[i][n + m];
  // At optimality the reduced cost of slack i equals the dual multiplier of
  // constraint i.
  res.dual.resize(m);
  for (std::size_t i = 0; i < m; ++i) res.dual[i] = tab[m][n + i];
  res.objective = tab[m][n + m];
  return res;
}

// Zero-sum matrix game, row player maximizing. Requires all entries
// positive. Solve the column player's normalization  max sum(x) s.t. M x <= 1
// (value = 1 / sum(x)); the row player's optimal mixture falls out of the
// dual multipliers of the same tableau.
template <typename T>
struct GameSolution {
  T value{};
  std::vector<T> row_strategy;
};

template <typename T>
GameSolution<T> solve_zero_sum_rowmax(const std::vector<std::vector<T>>& M,
                                      const T& eps = T(0)) {
  const std::size_t rows = M.size();
  if (rows == 0) throw std::invalid_argument("solve_zero_sum: empty matrix");
  const std::size_t cols = M[0].size();
  for (const auto& row : M)
    for (const auto& v : row)
      if (v <= 0)
        throw std::invalid_argument("solve_zero_sum: entries must be positive");

  std::vector<T> b(rows, T(1)), c(cols, T(1));
  auto lp = simplex_max<T>(M, b, c, eps);
  if (!lp.bounded || lp.objective <= 0)
    throw std::runtime_error("solve_zero_sum: LP failed");
  GameSolution<T> g;
  g.value = T(1) / lp.objective;
  g.row_strategy.resize(rows);
  for (std::size_t i = 0; i < rows; ++i)
    g.row_strategy[i] = lp.dual[i] * g.value;
  return g;
}

}  // namespace sktsp
