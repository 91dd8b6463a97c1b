#pragma once

#include "sktsp/instance.hpp"
#include "sktsp/numeric.hpp"
#include "sktsp/orienteering.hpp"
#include "sktsp/rng.hpp"

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace sktsp {

enum class OracleKind { Exact, Knapsack, BruteForce, Heuristic, Adversarial };

struct AdaptiveConfig {
  Rat rho{1};                         // factor entering the alpha formula
  std::optional<long> alpha_override;
  bool early_stop = true;             // halt mid-walk once the target is met
  int max_phase = 64;
  int exact_cap = 16;
  OracleKind oracle = OracleKind::Exact;

  long alpha_for(const Int& k) const {
    if (alpha_override) return *alpha_override;
    return alpha_adaptive(k, rho);
  }
};

struct IterationRecord {
  int phase = 0;
  int iter = 0;                       // 1-based within the phase
  Int budget;                         // 2^phase
  std::vector<int> walk;              // oracle walk, starting at depot
  std::vector<std::pair<int, Int>> observed;  // newly visited vertices
  Int residual_before;
  Int residual_after;
  Int incremental;                    // J_t, capped at the residual
  Rat gain_realized;                  // J_t / residual_before
  Rat length;                         // traversed length charged this iteration
};

struct RunTrace {
  std::vector<IterationRecord> iters;
  Rat total_length{0};
  Int total_reward{0};
  bool target_met = false;
  bool completed = false;             // target met or every vertex visited
  int last_phase = -1;                // last phase entered

  bool continues_beyond_phase(int i) const { return last_phase > i; }
};

// Dispatches to the configured solver for one orienteering call.
inline OracleResult call_oracle(const OrienteeringProblem& p,
                                const AdaptiveConfig& cfg) {
  switch (cfg.oracle) {
    case OracleKind::Exact:
      return p.inst->kind == Kind::Metric ? solve_exact(p, cfg.exact_cap)
                                          : solve_knapsack(p);
    case OracleKind::Knapsack:
      return solve_knapsack(p);
    case OracleKind::BruteForce:
      return brute_force(p);
    case OracleKind::Heuristic:
      return solve_heuristic(p, cfg.exact_cap);
    case OracleKind::Adversarial:
      return solve_adversarial(p, cfg.rho, cfg.exact_cap);
  }
  throw std::logic_error("call_oracle: unknown oracle kind");
}

// Oracle answers depend only on (visited set, residual target, budget), so
// repeated Monte Carlo trials share one cache.
class OracleCache {
 public:
  using Key = std::tuple<Int, Int, int>;  // visited bitmask, residual, phase

  const OracleResult& get(const Instance& inst, const AdaptiveConfig& cfg,
                          const std::vector<bool>& visited, const Int& residual,
                          int phase) {
    Int mask(0);
    for (std::size_t v = 0; v < visited.size(); ++v)
      if (visited[v]) boost::multiprecision::bit_set(mask, static_cast<unsigned>(v));
    Key key{mask, residual, phase};
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;

    OrienteeringProblem p;
    p.inst = &inst;
    p.root = inst.depot;
    p.budget = Rat(pow2(static_cast<unsigned>(phase)));
    p.profits.assign(inst.n, Rat(0));
    for (int v = 0; v < inst.n; ++v) {
      if (v == inst.depot || visited[v]) continue;
      p.profits[v] = truncated_expectation(inst.rewards[v], residual);
    }
    auto [ins, ok] = cache_.emplace(std::move(key), call_oracle(p, cfg));
    return ins->second;
  }

 private:
  std::map<Key, OracleResult> cache_;
};

// Algorithm: phases i = 0,1,... with budget 2^i; alpha inner iterations per
// phase; profits are residual-truncated expectations; terminates once the
// target is met or no unvisited vertex can contribute reward.
inline RunTrace run_adaptive(const Instance& inst, const AdaptiveConfig& cfg,
                             TrialSampler& sampler, OracleCache* cache = nullptr) {
  RunTrace trace;
  OracleCache local;
  if (!cache) cache = &local;
  long alpha = cfg.alpha_for(inst.k);
  if (alpha < 1) throw std::invalid_argument("run_adaptive: alpha must be >= 1");

  std::vector<bool> visited(inst.n, false);
  visited[inst.depot] = true;
  int unvisited = inst.n - 1;
  Int collected(0);

  auto residual = [&]() { return inst.k - collected; };
  auto done = [&]() { return collected >= inst.k || unvisited == 0; };

  // No unvisited vertex can still contribute: every run of the policy from
  // here on sees only zero-profit oracle calls, so stop (the footnote's
  // visit-everything rule would end with the same reward).
  auto exhausted = [&]() {
    if (collected >= inst.k) return false;
    for (int v = 0; v < inst.n; ++v)
      if (!visited[v] && inst.rewards[v].has_positive_mass()) return false;
    return true;
  };

  if (inst.k == 0) {
    trace.target_met = trace.completed = true;
    return trace;
  }

  for (int phase = 0; !done() && !exhausted(); ++phase) {
    if (phase > cfg.max_phase)
      throw std::runtime_error(
          "run_adaptive: phase cap exceeded; oracle keeps returning "
          "zero-profit tours while reward remains");
    trace.last_phase = phase;
    for (long t = 1; t <= alpha && !done(); ++t) {
      const OracleResult& tour =
          cache->get(inst, cfg, visited, residual(), phase);
      IterationRecord rec;
      rec.phase = phase;
      rec.iter = static_cast<int>(t);
      rec.budget = pow2(static_cast<unsigned>(phase));
      rec.walk = tour.walk;
      rec.residual_before = residual();

      int prev = inst.depot;
      Int gained(0);
      Rat length(0);
      for (std::size_t idx = 1; idx < tour.walk.size(); ++idx) {
        int v = tour.walk[idx];
        length += inst.enter_cost(prev, v);
        prev = v;
        if (!visited[v]) {
          visited[v] = true;
          --unvisited;
          const Int& r = sampler.reward(v);
          rec.observed.emplace_back(v, r);
          collected += r;
          gained += r;
        }
        if (cfg.early_stop && collected >= inst.k) break;
      }
      if (tour.walk.size() > 1) length += inst.return_cost(prev);

      rec.length = length;
      rec.residual_after = residual() < 0 ? Int(0) : residual();
      Int cap = rec.residual_before;
      rec.incremental = gained < cap ? gained : cap;
      rec.gain_realized =
          rec.residual_before > 0 ? Rat(rec.incremental) / Rat(rec.residual_before)
                                  : Rat(0);
      trace.total_length += length;
      bool empty_walk = rec.walk.size() <= 1;
      trace.iters.push_back(std::move(rec));
      if (exhausted()) break;
      // An empty walk leaves the state unchanged, so every remaining
      // iteration of this phase would repeat it; skip ahead.
      if (empty_walk) break;
    }
  }
  trace.total_reward = collected;
  trace.target_met = collected >= inst.k;
  trace.completed = trace.target_met || unvisited == 0;
  return trace;
}

// Expected fraction of the residual target covered by walking `walk` from
// state `state`; exact, via the capped prefix convolution.
inline Rat gain_of_state(const Instance& inst, const PolicyState& state,
                         const std::vector<int>& walk) {
  Int residual = inst.k - state.k_sigma;
  if (residual <= 0) return Rat(0);
  std::vector<RewardDistribution> fresh;
  for (int v : walk) {
    if (v == inst.depot || state.S.count(v)) continue;
    fresh.push_back(inst.rewards[v]);
  }
  if (fresh.empty()) return Rat(0);
  auto prefixes = capped_prefix_distribution(fresh, residual);
  return pmf_mean(prefixes.back()) / Rat(residual);
}

}  // namespace sktsp
