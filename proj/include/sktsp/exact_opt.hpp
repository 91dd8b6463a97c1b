#pragma once

#include "sktsp/instance.hpp"
#include "sktsp/nonadaptive.hpp"
#include "sktsp/numeric.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace sktsp {

struct ExactOptConfig {
  int max_vertices = 10;
  std::size_t max_states = 2'000'000;
};

// Optimal adaptive policy, as a value table over
// (current vertex, visited set, collected reward capped at k).
class OptAdaptivePolicy {
 public:
  struct Entry {
    Rat value;      // expected remaining length
    int next = -1;  // argmin next vertex; -1 at terminal states
  };
  using Key = std::tuple<int, std::uint32_t, Int>;

  OptAdaptivePolicy(const Instance& inst, ExactOptConfig cfg = {})
      : inst_(&inst), cfg_(cfg) {
    if (inst.n - 1 > cfg.max_vertices)
      throw std::invalid_argument("optimal_adaptive: instance too large");
    all_mask_ = 0;
    for (int v = 0; v < inst.n; ++v)
      if (v != inst.depot) all_mask_ |= 1u << v;
    root_value_ = evaluate(inst.depot, 0, Int(0)).value;
  }

  const Rat& value() const { return root_value_; }

  const Entry& at(int vertex, std::uint32_t mask, const Int& reward_capped) const {
    auto it = table_.find(Key{vertex, mask, reward_capped});
    if (it == table_.end())
      throw std::out_of_range("optimal_adaptive: state not reachable");
    return it->second;
  }

  const Instance& instance() const { return *inst_; }

  const Entry& evaluate(int vertex, std::uint32_t mask, Int reward) {
    if (reward > inst_->k) reward = inst_->k;
    Key key{vertex, mask, reward};
    auto it = table_.find(key);
    if (it != table_.end()) return it->second;
    if (table_.size() >= cfg_.max_states)
      throw std::runtime_error("optimal_adaptive: state bound exceeded (" +
                               std::to_string(table_.size()) + " states)");
    Entry e;
    if (reward >= inst_->k || mask == all_mask_) {
      e.value = inst_->return_cost(vertex);
      e.next = -1;
    } else {
      bool first = true;
      for (int u = 0; u < inst_->n; ++u) {
        if (u == inst_->depot || (mask & (1u << u))) continue;
        Rat cand = inst_->enter_cost(vertex, u);
        for (const auto& [val, prob] : inst_->rewards[u].support) {
          cand += prob * evaluate(u, mask | (1u << u), reward + val).value;
        }
        if (first || cand < e.value) {
          e.value = cand;
          e.next = u;
          first = false;
        }
      }
    }
    auto [ins, ok] = table_.emplace(std::move(key), std::move(e));
    return ins->second;
  }

 private:
  const Instance* inst_;
  ExactOptConfig cfg_;
  std::uint32_t all_mask_ = 0;
  Rat root_value_;
  std::map<Key, Entry> table_;
};

inline OptAdaptivePolicy optimal_adaptive(const Instance& inst,
                                          ExactOptConfig cfg = {}) {
  return OptAdaptivePolicy(inst, cfg);
}

// Distribution of the optimal policy's total traveled distance, obtained by
// enumerating reward realizations along its decision tree. Conditioning
// fixes the rewards of selected vertices.
struct CompletionProfile {
  std::map<Rat, Rat> distance_pmf;  // realized total distance -> probability

  // Pr[policy travels beyond distance 2^i] (strictly more than 2^i).
  Rat beyond(unsigned i) const {
    Rat threshold(pow2(i));
    Rat p(0);
    for (const auto& [d, pr] : distance_pmf)
      if (d > threshold) p += pr;
    return p;
  }

  // Pr[policy completes within distance 2^i]; complement of beyond().
  Rat within(unsigned i) const { return Rat(1) - beyond(i); }

  unsigned max_meaningful_index() const {
    if (distance_pmf.empty()) return 0;
    Rat dmax = distance_pmf.rbegin()->first;
    unsigned i = 0;
    while (Rat(pow2(i)) < dmax) ++i;
    return i;
  }
};

inline CompletionProfile completion_profile(
    OptAdaptivePolicy& policy, const Instance& inst,
    const std::map<int, Int>& condition = {}) {
  CompletionProfile profile;
  std::uint32_t all_mask = 0;
  for (int v = 0; v < inst.n; ++v)
    if (v != inst.depot) all_mask |= 1u << v;

  auto walk = [&](auto&& self, int vertex, std::uint32_t mask, const Int& reward,
                  const Rat& dist, const Rat& prob) -> void {
    if (reward >= inst.k || mask == all_mask) {
      profile.distance_pmf[dist + inst.return_cost(vertex)] += prob;
      return;
    }
    Int capped = reward > inst.k ? inst.k : reward;
    int next = policy.evaluate(vertex, mask, capped).next;
    Rat ndist = dist + inst.enter_cost(vertex, next);
    auto cond = condition.find(next);
    if (cond != condition.end()) {
      self(self, next, mask | (1u << next), reward + cond->second, ndist, prob);
      return;
    }
    for (const auto& [val, p] : inst.rewards[next].support)
      self(self, next, mask | (1u << next), reward + val, ndist, prob * p);
  };
  walk(walk, inst.depot, 0, Int(0), Rat(0), Rat(1));
  return profile;
}

// Best non-adaptive ordering by branch-and-bound over permutations; the
// expected length accumulates exactly as in expected_length_exact.
inline std::pair<std::vector<int>, Rat> optimal_nonadaptive(
    const Instance& inst, int max_vertices = 8) {
  if (inst.n - 1 > max_vertices)
    throw std::invalid_argument("optimal_nonadaptive: instance too large");
  if (inst.k == 0) return {{inst.depot}, Rat(0)};

  std::vector<int> order = {inst.depot};
  std::vector<int> best_order;
  std::optional<Rat> best;
  std::vector<bool> used(inst.n, false);
  used[inst.depot] = true;

  auto dfs = [&](auto&& self, int prev, const Pmf& prefix, const Rat& acc,
                 const Rat& p_cont) -> void {
    if (p_cont == 0 || order.size() == static_cast<std::size_t>(inst.n)) {
      Rat total = acc;
      if (p_cont > 0 && prev != inst.depot)
        total += p_cont * inst.return_cost(prev);
      if (!best || total < *best ||
          (total == *best && order < best_order)) {
        best = total;
        best_order = order;
      }
      return;
    }
    if (best && acc >= *best) return;  // lengths only grow
    for (int v = 0; v < inst.n; ++v) {
      if (used[v]) continue;
      Rat nacc = acc + p_cont * inst.enter_cost(prev, v);
      Pmf nprefix = convolve_capped(prefix, inst.rewards[v], inst.k);
      auto it = nprefix.find(inst.k);
      Rat met = it == nprefix.end() ? Rat(0) : it->second;
      Rat ncont = Rat(1) - met;
      nacc += (p_cont - ncont) * inst.return_cost(v);
      used[v] = true;
      order.push_back(v);
      self(self, v, nprefix, nacc, ncont);
      order.pop_back();
      used[v] = false;
    }
  };
  Pmf start;
  start[Int(0)] = Rat(1);
  dfs(dfs, inst.depot, start, Rat(0), Rat(1));
  return {best_order, *best};
}

}  // namespace sktsp
