#pragma once

#include "sktsp/instance.hpp"
#include "sktsp/numeric.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace sktsp {

// Rooted orienteering: maximize total profit of a walk from `root` whose
// length stays within `budget` under the instance's tour-mode accounting.
struct OrienteeringProblem {
  const Instance* inst = nullptr;
  int root = 0;
  Rat budget;
  std::vector<Rat> profits;
};

struct OracleResult {
  std::vector<int> walk;           // starts at root
  Rat length{0};                   // includes return leg in closed mode
  Rat profit{0};
  std::optional<Rat> rho;          // declared factor; nullopt = empirical
  std::optional<double> empirical_ratio;  // heuristic profit / exact profit
};

namespace detail {

inline std::vector<int> mask_to_vertices(std::uint32_t mask,
                                         const std::vector<int>& ids) {
  std::vector<int> out;
  for (std::size_t j = 0; j < ids.size(); ++j)
    if (mask & (1u << j)) out.push_back(ids[j]);
  return out;
}

}  // namespace detail

// Exact solver for metric instances: Held-Karp style DP over
// (visited subset, end vertex) minimizing walk length, then the best
// feasible state by profit, length, then lexicographic visited set.
inline OracleResult solve_exact(const OrienteeringProblem& p, int vertex_cap = 16) {
  const Instance& inst = *p.inst;
  if (inst.kind != Kind::Metric)
    throw std::invalid_argument("solve_exact: metric instances only");
  std::vector<int> ids;
  for (int v = 0; v < inst.n; ++v)
    if (v != p.root) ids.push_back(v);
  int m = static_cast<int>(ids.size());
  if (m > vertex_cap)
    throw std::invalid_argument(
        "solve_exact: vertex count above cap; use solve_heuristic");

  bool any_profit = false;
  for (int v : ids)
    if (p.profits[v] > 0) any_profit = true;
  if (!any_profit) {
    OracleResult trivial;
    trivial.walk = {p.root};
    trivial.rho = Rat(1);
    return trivial;
  }

  const bool closed = inst.tour_mode == TourMode::Closed;
  const Rat kInf(-1);  // sentinel: unreachable
  std::size_t nmask = std::size_t(1) << m;
  std::vector<std::vector<Rat>> dp(nmask, std::vector<Rat>(m, kInf));
  std::vector<std::vector<int>> parent(nmask, std::vector<int>(m, -2));
  for (int j = 0; j < m; ++j) {
    Rat d = inst.metric.dist[p.root][ids[j]];
    if (d <= p.budget) {
      dp[1u << j][j] = d;
      parent[1u << j][j] = -1;  // came from root
    }
  }
  for (std::uint32_t mask = 1; mask < nmask; ++mask) {
    for (int j = 0; j < m; ++j) {
      if (!(mask & (1u << j)) || dp[mask][j] == kInf) continue;
      for (int l = 0; l < m; ++l) {
        if (mask & (1u << l)) continue;
        Rat cand = dp[mask][j] + inst.metric.dist[ids[j]][ids[l]];
        if (cand > p.budget) continue;
        std::uint32_t nm = mask | (1u << l);
        if (dp[nm][l] == kInf || cand < dp[nm][l]) {
          dp[nm][l] = cand;
          parent[nm][l] = j;
        }
      }
    }
  }

  // Evaluate candidates; the empty walk is always feasible.
  OracleResult best;
  best.walk = {p.root};
  best.rho = Rat(1);
  std::uint32_t best_mask = 0;
  int best_end = -1;
  for (std::uint32_t mask = 1; mask < nmask; ++mask) {
    Rat prof(0);
    for (int j = 0; j < m; ++j)
      if (mask & (1u << j)) prof += p.profits[ids[j]];
    Rat blen(-1);
    int bend = -1;
    for (int j = 0; j < m; ++j) {
      if (!(mask & (1u << j)) || dp[mask][j] == kInf) continue;
      Rat len = dp[mask][j];
      if (closed) len += inst.metric.dist[ids[j]][p.root];
      if (len > p.budget) continue;
      if (blen < 0 || len < blen) {
        blen = len;
        bend = j;
      }
    }
    if (bend < 0) continue;
    bool better = false;
    if (prof > best.profit) better = true;
    else if (prof == best.profit && blen < best.length) better = true;
    else if (prof == best.profit && blen == best.length && best_end >= 0) {
      better = detail::mask_to_vertices(mask, ids) <
               detail::mask_to_vertices(best_mask, ids);
    }
    if (better) {
      best.profit = prof;
      best.length = blen;
      best_mask = mask;
      best_end = bend;
    }
  }
  if (best_end >= 0) {
    std::vector<int> rev;
    std::uint32_t mask = best_mask;
    int j = best_end;
    while (j != -1) {
      rev.push_back(ids[j]);
      int pj = parent[mask][j];
      mask &= ~(1u << j);
      j = pj;
    }
    best.walk = {p.root};
    for (auto it = rev.rbegin(); it != rev.rend(); ++it) best.walk.push_back(*it);
  }
  return best;
}

// Exact 0/1 knapsack for the weighted-star case. Ties: higher profit, then
// smaller total cost, then lexicographically smallest item set.
inline OracleResult solve_knapsack(const OrienteeringProblem& p) {
  const Instance& inst = *p.inst;
  if (inst.kind != Kind::Knapsack)
    throw std::invalid_argument("solve_knapsack: knapsack instances only");
  if (rat_den(p.budget) != 1)
    throw std::invalid_argument("solve_knapsack: budget must be an integer");
  Int budget = rat_num(p.budget);
  if (budget < 0) budget = 0;

  std::vector<int> ids;
  for (int v = 0; v < inst.n; ++v)
    if (v != p.root) ids.push_back(v);
  bool any_profit = false;
  for (int v : ids)
    if (p.profits[v] > 0) any_profit = true;
  if (!any_profit || budget == 0) {
    OracleResult trivial;
    trivial.walk = {p.root};
    trivial.rho = Rat(1);
    return trivial;
  }
  // Scale profits to integers over a common denominator for fast DP cells.
  Int den(1);
  for (int v : ids) den = boost::multiprecision::lcm(den, rat_den(p.profits[v]));
  int m = static_cast<int>(ids.size());
  Int total_cost(0);
  for (int v : ids) total_cost += inst.costs[v];
  Int bcap = budget < total_cost ? budget : total_cost;
  long B = static_cast<long>(bcap);

  std::vector<Int> prof(m), cost(m);
  for (int j = 0; j < m; ++j) {
    prof[j] = rat_num(p.profits[ids[j]]) * (den / rat_den(p.profits[ids[j]]));
    cost[j] = inst.costs[ids[j]];
  }

  // Suffix DP over items j..m-1: best (max profit, then min cost) per budget.
  // One row per item keeps the lexicographic reconstruction simple.
  struct Cell { Int profit; Int cost; };
  std::vector<std::vector<Cell>> dp(m + 1, std::vector<Cell>(B + 1));
  for (long b = 0; b <= B; ++b) dp[m][b] = {Int(0), Int(0)};
  for (int j = m - 1; j >= 0; --j) {
    long cj = cost[j] <= Int(B) ? static_cast<long>(cost[j]) : B + 1;
    for (long b = 0; b <= B; ++b) {
      dp[j][b] = dp[j + 1][b];
      if (cj <= b) {
        Int pr = prof[j] + dp[j + 1][b - cj].profit;
        Int co = cost[j] + dp[j + 1][b - cj].cost;
        if (pr > dp[j][b].profit ||
            (pr == dp[j][b].profit && co < dp[j][b].cost)) {
          dp[j][b] = {pr, co};
        }
      }
    }
  }

  OracleResult res;
  res.rho = Rat(1);
  res.walk = {p.root};
  if (dp[0][B].profit == 0) {
    // Empty set is the lexicographically smallest zero-profit solution.
    return res;
  }
  long b = B;
  for (int j = 0; j < m; ++j) {
    long cj = cost[j] <= Int(b) ? static_cast<long>(cost[j]) : b + 1;
    if (cj <= b) {
      Int pr = prof[j] + dp[j + 1][b - cj].profit;
      Int co = cost[j] + dp[j + 1][b - cj].cost;
      if (pr == dp[j][b].profit && co == dp[j][b].cost) {
        res.walk.push_back(ids[j]);
        res.profit += p.profits[ids[j]];
        res.length += Rat(cost[j]);
        b -= cj;
      }
    }
  }
  return res;
}

// Exhaustive test oracle over all ordered vertex subsets (metric kind) or
// all subsets (knapsack kind).
inline OracleResult brute_force(const OrienteeringProblem& p, int vertex_cap = 8) {
  const Instance& inst = *p.inst;
  std::vector<int> ids;
  for (int v = 0; v < inst.n; ++v)
    if (v != p.root) ids.push_back(v);
  int m = static_cast<int>(ids.size());
  if (inst.kind == Kind::Metric && m > vertex_cap)
    throw std::invalid_argument("brute_force: too many vertices");
  if (inst.kind == Kind::Knapsack && m > 20)
    throw std::invalid_argument("brute_force: too many items");

  OracleResult best;
  best.walk = {p.root};
  best.rho = Rat(1);
  auto consider = [&](const std::vector<int>& order, const Rat& len) {
    Rat prof(0);
    for (int v : order) prof += p.profits[v];
    bool better = false;
    if (prof > best.profit) better = true;
    else if (prof == best.profit && len < best.length) better = true;
    else if (prof == best.profit && len == best.length) {
      std::vector<int> a = order, bset(best.walk.begin() + 1, best.walk.end());
      std::sort(a.begin(), a.end());
      std::sort(bset.begin(), bset.end());
      better = a < bset;
    }
    if (better) {
      best.profit = prof;
      best.length = len;
      best.walk = {p.root};
      for (int v : order) best.walk.push_back(v);
    }
  };

  if (inst.kind == Kind::Knapsack) {
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      Rat len(0);
      std::vector<int> sel;
      for (int j = 0; j < m; ++j)
        if (mask & (1u << j)) {
          len += Rat(inst.costs[ids[j]]);
          sel.push_back(ids[j]);
        }
      if (len <= p.budget) consider(sel, len);
    }
    return best;
  }

  // Ordered subsets of a metric instance, depth-first.
  std::vector<int> order;
  std::vector<bool> used(m, false);
  auto dfs = [&](auto&& self, int last, const Rat& len) -> void {
    for (int j = 0; j < m; ++j) {
      if (used[j]) continue;
      Rat nl = len + inst.metric.dist[last][ids[j]];
      Rat effective = nl;
      if (inst.tour_mode == TourMode::Closed)
        effective += inst.metric.dist[ids[j]][p.root];
      if (effective > p.budget) continue;
      used[j] = true;
      order.push_back(ids[j]);
      consider(order, effective);
      self(self, ids[j], nl);
      order.pop_back();
      used[j] = false;
    }
  };
  dfs(dfs, p.root, Rat(0));
  return best;
}

// Greedy insertion heuristic usable at any size; reports its profit ratio
// against the exact solver when the instance is small enough.
inline OracleResult solve_heuristic(const OrienteeringProblem& p, int exact_cap = 16) {
  const Instance& inst = *p.inst;
  OracleResult res;
  res.walk = {p.root};
  int cur = p.root;
  std::vector<bool> used(inst.n, false);
  used[p.root] = true;
  for (;;) {
    int pick = -1;
    Rat pick_cost(0);
    // Highest profit density among affordable extensions.
    Rat best_num(0), best_den(1);
    for (int v = 0; v < inst.n; ++v) {
      if (used[v] || p.profits[v] < 0) continue;
      Rat step = inst.enter_cost(cur, v);
      Rat total = res.length + step;
      if (inst.kind == Kind::Metric && inst.tour_mode == TourMode::Closed)
        total += inst.metric.dist[v][p.root];
      else if (inst.kind == Kind::Metric)
        total = res.length + step;
      if (total > p.budget) continue;
      // Compare profit/step as cross products; zero step sorts first.
      bool better;
      if (pick < 0) better = true;
      else if (step == 0 && pick_cost != 0) better = true;
      else if (step == 0 && pick_cost == 0) better = p.profits[v] > best_num;
      else if (pick_cost == 0) better = false;
      else better = p.profits[v] * pick_cost > best_num * step ||
                    (p.profits[v] * pick_cost == best_num * step && v < pick);
      if (better) {
        pick = v;
        pick_cost = step;
        best_num = p.profits[v];
        best_den = step == 0 ? Rat(1) : step;
      }
    }
    if (pick < 0) break;
    res.length += pick_cost;
    res.profit += p.profits[pick];
    res.walk.push_back(pick);
    used[pick] = true;
    cur = pick;
  }
  if (inst.kind == Kind::Metric && inst.tour_mode == TourMode::Closed &&
      res.walk.size() > 1)
    res.length += inst.metric.dist[cur][p.root];
  res.rho = std::nullopt;
  if (inst.n - 1 <= exact_cap) {
    OracleResult exact = inst.kind == Kind::Metric
                             ? solve_exact(p, exact_cap)
                             : solve_knapsack(p);
    if (exact.profit > 0) {
      res.empirical_ratio =
          static_cast<double>(Real(res.profit / exact.profit));
    } else {
      res.empirical_ratio = 1.0;
    }
  }
  return res;
}

// Worst-case rho-approximate oracle: among feasible solutions with profit at
// least opt/rho, returns the one with minimum profit (then smaller length,
// then lexicographically smallest set). Lower-bound constructions assume an
// adversarial approximate orienteering solver; the exact oracle never makes
// the bad choice on its own.
inline OracleResult solve_adversarial(const OrienteeringProblem& p, const Rat& rho,
                                      int vertex_cap = 16) {
  const Instance& inst = *p.inst;
  if (rho < 1) throw std::invalid_argument("solve_adversarial: rho must be >= 1");
  OracleResult opt = inst.kind == Kind::Metric ? solve_exact(p, vertex_cap)
                                               : solve_knapsack(p);
  Rat threshold = opt.profit / rho;

  std::vector<int> ids;
  for (int v = 0; v < inst.n; ++v)
    if (v != p.root) ids.push_back(v);
  int m = static_cast<int>(ids.size());
  if (m > 20)
    throw std::invalid_argument("solve_adversarial: too many vertices");

  OracleResult best = opt;
  bool have = false;
  auto consider = [&](const std::vector<int>& walk, const Rat& len, const Rat& prof) {
    if (prof < threshold) return;
    bool better = false;
    if (!have) better = true;
    else if (prof < best.profit) better = true;
    else if (prof == best.profit && len < best.length) better = true;
    else if (prof == best.profit && len == best.length) {
      std::vector<int> a(walk.begin() + 1, walk.end());
      std::vector<int> b(best.walk.begin() + 1, best.walk.end());
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      better = a < b;
    }
    if (better) {
      have = true;
      best.walk = walk;
      best.length = len;
      best.profit = prof;
    }
  };

  if (inst.kind == Kind::Knapsack) {
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      Rat len(0), prof(0);
      std::vector<int> walk = {p.root};
      for (int j = 0; j < m; ++j)
        if (mask & (1u << j)) {
          len += Rat(inst.costs[ids[j]]);
          prof += p.profits[ids[j]];
          walk.push_back(ids[j]);
        }
      if (len <= p.budget) consider(walk, len, prof);
    }
  } else {
    std::vector<int> order = {p.root};
    std::vector<bool> used(m, false);
    consider(order, Rat(0), Rat(0));
    auto dfs = [&](auto&& self, int last, const Rat& len, const Rat& prof) -> void {
      for (int j = 0; j < m; ++j) {
        if (used[j]) continue;
        Rat nl = len + inst.metric.dist[last][ids[j]];
        Rat effective = nl;
        if (inst.tour_mode == TourMode::Closed)
          effective += inst.metric.dist[ids[j]][p.root];
        if (effective > p.budget) continue;
        used[j] = true;
        order.push_back(ids[j]);
        Rat np = prof + p.profits[ids[j]];
        consider(order, effective, np);
        self(self, ids[j], nl, np);
        order.pop_back();
        used[j] = false;
      }
    };
    dfs(dfs, p.root, Rat(0), Rat(0));
  }
  best.rho = rho;
  return best;
}

}  // namespace sktsp
