#pragma once

#include "sktsp/bidding.hpp"
#include "sktsp/instance.hpp"
#include "sktsp/numeric.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

namespace sktsp {

namespace detail {

// Knapsack-cover skeleton: vertex 0 is the depot with zero cost and reward.
inline Instance knapsack_skeleton(Int k) {
  Instance inst;
  inst.kind = Kind::Knapsack;
  inst.tour_mode = TourMode::Open;
  inst.k = std::move(k);
  inst.n = 1;
  inst.depot = 0;
  inst.costs.push_back(Int(0));
  inst.rewards.push_back(RewardDistribution::point_mass(Int(0)));
  return inst;
}

inline void add_item(Instance& inst, Int cost, RewardDistribution reward) {
  inst.costs.push_back(std::move(cost));
  inst.rewards.push_back(std::move(reward));
  inst.n += 1;
}

}  // namespace detail

// Deterministic ladder: per i in {0..l}, one item (cost 2^i, reward 2^i)
// plus `fill` items (cost 2^i, reward 1). Covering k = 2^l optimally costs
// 2^l via the single large item.
inline Instance gen_ladder(int l, int fill) {
  Instance inst = detail::knapsack_skeleton(pow2(l));
  for (int i = 0; i <= l; ++i) {
    detail::add_item(inst, pow2(i), RewardDistribution::point_mass(pow2(i)));
    for (int j = 0; j < fill; ++j)
      detail::add_item(inst, pow2(i), RewardDistribution::point_mass(Int(1)));
  }
  inst.validate();
  return inst;
}

// l(l+1) items: l-1 unit fillers per rung.
inline Instance gen_example1(int l) {
  if (l < 3 || l > 20) throw std::invalid_argument("gen_example1: l out of range");
  return gen_ladder(l, l - 1);
}

// l^2(l+1) items: l^2-1 unit fillers per rung.
inline Instance gen_example3(int l) {
  if (l < 3 || l > 20) throw std::invalid_argument("gen_example3: l out of range");
  return gen_ladder(l, l * l - 1);
}

// Star instance where constant-iteration adaptive variants stall: k=(ht)^(2ht),
// delta=1/(ht); vertex w (cost 1) holds a deterministic reward k; vertices
// u_{ij} (cost 2^i, i in {0..t-1}, j in {0..h-1}) each hold the sum of three
// co-located rewards: a deterministic (1-delta)*delta^(hi+j)*k and two
// independent delta^(hi+j)*k successes of probability delta. The sum is
// folded into a single per-vertex pmf with values capped at k.
inline Instance gen_example2(int h, int t) {
  if (h < 1 || t < 1 || h * t > 8)
    throw std::invalid_argument("gen_example2: require 1 <= h*t <= 8");
  const Int ht(h * t);
  Int k(1);
  for (int e = 0; e < 2 * h * t; ++e) k *= ht;
  const Rat delta = Rat(1) / Rat(ht);

  Instance inst = detail::knapsack_skeleton(k);
  detail::add_item(inst, Int(1), RewardDistribution::point_mass(k));
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < h; ++j) {
      const int e = h * i + j;
      Int unit = k;  // delta^e * k = k / (ht)^e, exactly divisible
      for (int step = 0; step < e; ++step) {
        if (unit % ht != 0)
          throw std::logic_error("gen_example2: non-integral reward");
        unit /= ht;
      }
      Rat base_r = (Rat(1) - delta) * Rat(unit);
      if (denominator(base_r) != 1)
        throw std::logic_error("gen_example2: non-integral reward");
      Int base = numerator(base_r);

      const Rat q = Rat(1) - delta;
      std::map<Int, Rat> pmf;
      auto capped = [&](const Int& v) { return v > k ? k : v; };
      pmf[capped(base)] += q * q;
      pmf[capped(base + unit)] += 2 * delta * q;
      pmf[capped(base + 2 * unit)] += delta * delta;
      RewardDistribution d;
      for (auto& [v, p] : pmf) d.support.emplace_back(v, p);
      detail::add_item(inst, pow2(i), std::move(d));
    }
  inst.validate();
  return inst;
}

// Knapsack cover with k=2^l: m cost-1 items paying k with probability
// 2/(3l), plus h items of cost 2^i and reward k/2^j (same probability) for
// each i in {0..l/h}, j in {1..l}. m defaults to the smallest count with
// Pr[every cost-1 item fails] < 1e-6.
inline Instance gen_example4(int l, int h, int m = 0) {
  if (l < 2 || l > 24 || h < 1 || h > l)
    throw std::invalid_argument("gen_example4: bad parameters");
  const Rat p = Rat(2, 3 * l);
  if (m <= 0) {
    const double fail = 1.0 - static_cast<double>(Real(p));
    double acc = 1.0;
    m = 0;
    while (acc >= 1e-6) {
      acc *= fail;
      ++m;
    }
  }
  const Int k = pow2(l);
  Instance inst = detail::knapsack_skeleton(k);
  auto bernoulli = [&](const Int& v) {
    RewardDistribution d;
    d.support.emplace_back(Int(0), Rat(1) - p);
    d.support.emplace_back(v, p);
    return d;
  };
  for (int idx = 0; idx < m; ++idx) detail::add_item(inst, Int(1), bernoulli(k));
  for (int i = 0; i <= l / h; ++i)
    for (int j = 1; j <= l; ++j)
      for (int copy = 0; copy < h; ++copy)
        detail::add_item(inst, pow2(i), bernoulli(k / pow2(j)));
  inst.validate();
  return inst;
}

// Adaptivity-gap instance on target k=2^(n+1): one zero-cost random item
// worth k-2^i with probability p_i, plus deterministic items of cost i and
// reward 2^i for i in [n]. p defaults to the worst-case distribution from
// the bidding LP.
inline Instance gen_gap_instance(int n, std::vector<Rat> p = {}) {
  if (n < 1 || n > 14) throw std::invalid_argument("gen_gap_instance: n out of range");
  if (p.empty()) {
    auto lp = solve_bidding_lp(n);
    if (lp.exact) {
      p = lp.p_rat;
    } else {
      // Beyond the exact-pivoting range: rationalize and renormalize.
      Rat total(0);
      for (double v : lp.p) {
        Rat r(Int(static_cast<long long>(v * 1e15)), Int(1000000000000000LL));
        p.push_back(r);
        total += r;
      }
      for (auto& r : p) r /= total;
    }
  }
  if (static_cast<int>(p.size()) != n)
    throw std::invalid_argument("gen_gap_instance: p must have n entries");
  Rat total(0);
  for (const auto& pi : p) {
    if (pi < 0) throw std::invalid_argument("gen_gap_instance: negative probability");
    total += pi;
  }
  if (total != 1) throw std::invalid_argument("gen_gap_instance: p must sum to 1");

  const Int k = pow2(n + 1);
  Instance inst = detail::knapsack_skeleton(k);
  RewardDistribution random_item;
  for (int i = n; i >= 1; --i)
    if (p[i - 1] > 0) random_item.support.emplace_back(k - pow2(i), p[i - 1]);
  detail::add_item(inst, Int(0), std::move(random_item));
  for (int i = 1; i <= n; ++i)
    detail::add_item(inst, Int(i), RewardDistribution::point_mass(pow2(i)));
  inst.validate();
  return inst;
}

enum class Geometry { Star, Points };

// Seeded random instance: star metric with integer leaf distances, or grid
// points under the L1 metric with distances rescaled so the minimum is 1.
// Rewards are small-support pmfs with dyadic probabilities; the last vertex
// always carries a deterministic reward k so the target is reachable.
inline Instance gen_random(int n, Int k, std::uint64_t seed,
                           Geometry geometry = Geometry::Star) {
  if (n < 2) throw std::invalid_argument("gen_random: n must be >= 2");
  if (k < 1) throw std::invalid_argument("gen_random: k must be >= 1");
  std::mt19937_64 rng(seed);

  Instance inst;
  inst.kind = Kind::Metric;
  inst.tour_mode = TourMode::Open;
  inst.n = n;
  inst.depot = 0;
  inst.k = k;
  inst.metric.n = n;
  inst.metric.depot = 0;
  inst.metric.dist.assign(n, std::vector<Rat>(n, Rat(0)));

  if (geometry == Geometry::Star) {
    std::uniform_int_distribution<int> leg(1, 20);
    std::vector<int> leaf(n, 0);
    for (int v = 1; v < n; ++v) leaf[v] = leg(rng);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (a != b) inst.metric.dist[a][b] = Rat(leaf[a] + leaf[b]);
  } else {
    std::uniform_int_distribution<int> coord(0, 50);
    std::vector<std::pair<int, int>> pts(n);
    for (auto& pt : pts) pt = {coord(rng), coord(rng)};
    Int min_pos(0);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        Int d(std::abs(pts[a].first - pts[b].first) +
              std::abs(pts[a].second - pts[b].second));
        if (d == 0) d = 1;  // collapse duplicates to the minimum gap
        if (min_pos == 0 || d < min_pos) min_pos = d;
        inst.metric.dist[a][b] = inst.metric.dist[b][a] = Rat(d);
      }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (a != b) inst.metric.dist[a][b] /= Rat(min_pos);
  }

  inst.rewards.resize(n);
  inst.rewards[0] = RewardDistribution::point_mass(Int(0));
  std::uniform_int_distribution<int> support_size(1, 3);
  std::uniform_int_distribution<int> weight(1, 7);
  const long long kcap =
      k > Int(std::numeric_limits<long long>::max())
          ? std::numeric_limits<long long>::max()
          : static_cast<long long>(k);
  std::uniform_int_distribution<long long> value(0, kcap);
  for (int v = 1; v < n - 1; ++v) {
    int sz = support_size(rng);
    std::map<Int, int> weights;
    for (int s = 0; s < sz; ++s) weights[Int(value(rng))] += weight(rng);
    int total = 0;
    for (auto& [val, w] : weights) total += w;
    RewardDistribution d;
    for (auto& [val, w] : weights) d.support.emplace_back(val, Rat(w, total));
    inst.rewards[v] = std::move(d);
  }
  inst.rewards[n - 1] = RewardDistribution::point_mass(k);
  inst.validate();
  return inst;
}

}  // namespace sktsp
