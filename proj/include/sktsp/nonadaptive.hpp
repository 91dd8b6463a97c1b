#pragma once

#include "sktsp/adaptive.hpp"
#include "sktsp/instance.hpp"
#include "sktsp/numeric.hpp"
#include "sktsp/orienteering.hpp"
#include "sktsp/rng.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace sktsp {

struct NonAdaptiveConfig {
  Rat rho{1};
  std::optional<long> alpha_override;
  int max_phase = 64;
  int exact_cap = 16;
  OracleKind oracle = OracleKind::Exact;
  bool skip_duplicates = true;  // drop zero-profit revisits from tau

  long alpha_for(const Int& k) const {
    if (alpha_override) return *alpha_override;
    return alpha_nonadaptive(k, rho);
  }
};

struct TourSegment {
  int phase = 0;
  int iter = 0;       // t within the phase, 1-based
  int cap_index = 0;  // j: profit cap is k / 2^j
  std::vector<int> added;
};

// Static ordered walk produced by the non-adaptive builder. `tau` holds the
// distinct vertices in visiting order (depot first).
struct NonAdaptiveTour {
  std::vector<int> tau;
  std::vector<TourSegment> segments;
  long build_alpha = 0;
  int cap_levels = 0;  // ell = 1 + floor(log2 k)
};

namespace detail {

// Cheap upper bound on the length needed to visit every vertex in `todo`:
// nearest-neighbor walk from the depot (metric) or total cost (knapsack).
inline Rat spanning_walk_bound(const Instance& inst, const std::vector<bool>& skip) {
  Rat total(0);
  if (inst.kind == Kind::Knapsack) {
    for (int v = 0; v < inst.n; ++v)
      if (!skip[v] && v != inst.depot) total += Rat(inst.costs[v]);
    return total;
  }
  std::vector<bool> used = skip;
  used[inst.depot] = true;
  int cur = inst.depot;
  for (;;) {
    int pick = -1;
    for (int v = 0; v < inst.n; ++v) {
      if (used[v]) continue;
      if (pick < 0 || inst.metric.dist[cur][v] < inst.metric.dist[cur][pick])
        pick = v;
    }
    if (pick < 0) break;
    total += inst.metric.dist[cur][pick];
    used[pick] = true;
    cur = pick;
  }
  if (inst.tour_mode == TourMode::Closed) total += inst.metric.dist[cur][inst.depot];
  return total;
}

}  // namespace detail

// Three-level loop: phases with budget 2^i, alpha iterations, and the cap
// ladder k/2^j. Build stops once a phase adds no vertex while its budget
// already covers a spanning walk of everything still unvisited.
inline NonAdaptiveTour build_nonadaptive(const Instance& inst,
                                         const NonAdaptiveConfig& cfg) {
  if (inst.k < 1) {
    NonAdaptiveTour t;
    t.tau = {inst.depot};
    return t;
  }
  NonAdaptiveTour tour;
  tour.build_alpha = cfg.alpha_for(inst.k);
  tour.cap_levels = static_cast<int>(floor_log2(inst.k)) + 1;
  tour.tau = {inst.depot};

  AdaptiveConfig ocfg;  // reused only for oracle dispatch
  ocfg.rho = cfg.rho;
  ocfg.exact_cap = cfg.exact_cap;
  ocfg.oracle = cfg.oracle;

  std::vector<bool> visited(inst.n, false);
  visited[inst.depot] = true;
  int unvisited = inst.n - 1;

  auto relevant_left = [&]() {
    for (int v = 0; v < inst.n; ++v)
      if (!visited[v] && inst.rewards[v].has_positive_mass()) return true;
    return false;
  };

  for (int phase = 0; unvisited > 0 && relevant_left(); ++phase) {
    if (phase > cfg.max_phase)
      throw std::runtime_error("build_nonadaptive: phase cap exceeded");
    Rat budget(pow2(static_cast<unsigned>(phase)));
    bool phase_added = false;
    for (long t = 1; t <= tour.build_alpha; ++t) {
      bool iter_added = false;
      for (int j = 0; j < tour.cap_levels; ++j) {
        Rat cap = Rat(inst.k) / Rat(pow2(static_cast<unsigned>(j)));
        OrienteeringProblem p;
        p.inst = &inst;
        p.root = inst.depot;
        p.budget = budget;
        p.profits.assign(inst.n, Rat(0));
        for (int v = 0; v < inst.n; ++v) {
          if (v == inst.depot || visited[v]) continue;
          p.profits[v] = truncated_expectation(inst.rewards[v], cap);
        }
        OracleResult res = call_oracle(p, ocfg);
        TourSegment seg;
        seg.phase = phase;
        seg.iter = static_cast<int>(t);
        seg.cap_index = j;
        for (std::size_t idx = 1; idx < res.walk.size(); ++idx) {
          int v = res.walk[idx];
          if (visited[v]) {
            if (!cfg.skip_duplicates) tour.tau.push_back(v);
            continue;
          }
          visited[v] = true;
          --unvisited;
          seg.added.push_back(v);
          tour.tau.push_back(v);
          iter_added = phase_added = true;
        }
        if (!seg.added.empty()) tour.segments.push_back(std::move(seg));
      }
      // State unchanged: the remaining iterations of this phase repeat it.
      if (!iter_added) break;
    }
    if (!phase_added &&
        budget >= detail::spanning_walk_bound(inst, visited))
      break;
  }
  return tour;
}

// Exact expected traversed length of executing `tour`: the step into the
// j-th vertex is charged with the probability that the capped prefix reward
// seen so far is still below k.
inline Rat expected_length_exact(const Instance& inst, const NonAdaptiveTour& tour) {
  Rat expected(0);
  Pmf prefix;
  prefix[Int(0)] = Rat(1);
  auto continue_prob = [&]() {
    auto it = prefix.find(inst.k);
    Rat met = it == prefix.end() ? Rat(0) : it->second;
    return Rat(1) - met;
  };
  std::vector<bool> seen(inst.n, false);
  seen[inst.depot] = true;
  int prev = inst.depot;
  Rat p_cont = inst.k > 0 ? Rat(1) : Rat(0);
  for (std::size_t idx = 1; idx < tour.tau.size(); ++idx) {
    int v = tour.tau[idx];
    if (p_cont == 0) break;
    expected += p_cont * inst.enter_cost(prev, v);
    if (!seen[v]) {
      seen[v] = true;
      prefix = convolve_capped(prefix, inst.rewards[v], inst.k);
      Rat after = continue_prob();
      // Completed exactly here: pay the return leg in closed mode.
      expected += (p_cont - after) * inst.return_cost(v);
      p_cont = after;
    }
    prev = v;
  }
  // Ran out of vertices without meeting the target: the walk still ends
  // here, returning to the depot in closed mode.
  if (p_cont > 0 && prev != inst.depot) expected += p_cont * inst.return_cost(prev);
  return expected;
}

// Sampled execution of a built tour; stops once the target is met or tau is
// exhausted.
inline RunTrace execute_nonadaptive(const Instance& inst, const NonAdaptiveTour& tour,
                                    TrialSampler& sampler) {
  RunTrace trace;
  Int collected(0);
  std::vector<bool> seen(inst.n, false);
  seen[inst.depot] = true;
  int prev = inst.depot;
  int visited_count = 1;
  trace.last_phase = 0;
  for (std::size_t idx = 1; idx < tour.tau.size(); ++idx) {
    if (collected >= inst.k && inst.k > 0) break;
    if (inst.k == 0) break;
    int v = tour.tau[idx];
    trace.total_length += inst.enter_cost(prev, v);
    if (!seen[v]) {
      seen[v] = true;
      ++visited_count;
      const Int& r = sampler.reward(v);
      collected += r;
    }
    prev = v;
  }
  if (prev != inst.depot) trace.total_length += inst.return_cost(prev);
  trace.total_reward = collected;
  trace.target_met = collected >= inst.k;
  trace.completed = trace.target_met ||
                    visited_count == static_cast<int>(tour.tau.size());
  return trace;
}

}  // namespace sktsp
