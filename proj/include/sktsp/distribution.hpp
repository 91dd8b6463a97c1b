#pragma once

#include "sktsp/numeric.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sktsp {

using Pmf = std::map<Int, Rat>;

// Integer-valued reward distribution with exact rational probabilities.
// Support values are distinct, sorted ascending; probabilities are positive
// and sum to exactly one.
struct RewardDistribution {
  std::vector<std::pair<Int, Rat>> support;

  static RewardDistribution point_mass(Int v) {
    RewardDistribution d;
    d.support.emplace_back(std::move(v), Rat(1));
    return d;
  }

  void validate() const {
    if (support.empty()) throw std::invalid_argument("pmf: empty support");
    Rat total(0);
    for (std::size_t i = 0; i < support.size(); ++i) {
      const auto& [v, p] = support[i];
      if (v < 0) throw std::invalid_argument("pmf: negative value");
      if (p <= 0) throw std::invalid_argument("pmf: non-positive probability");
      if (i > 0 && !(support[i - 1].first < v))
        throw std::invalid_argument("pmf: values not strictly increasing");
      total += p;
    }
    if (total != 1) throw std::invalid_argument("pmf mass != 1");
  }

  bool is_point_mass_zero() const {
    return support.size() == 1 && support[0].first == 0;
  }

  bool has_positive_mass() const {
    for (const auto& [v, p] : support)
      if (v > 0) return true;
    return false;
  }

  Int max_value() const { return support.back().first; }

  Rat mean() const {
    Rat m(0);
    for (const auto& [v, p] : support) m += Rat(v) * p;
    return m;
  }
};

// E[min(R, cap)] with integer cap.
inline Rat truncated_expectation(const RewardDistribution& d, const Int& cap) {
  if (cap < 0) throw std::invalid_argument("truncated_expectation: cap < 0");
  Rat m(0);
  for (const auto& [v, p] : d.support) m += Rat(v <= cap ? v : cap) * p;
  return m;
}

// E[min(R, cap)] with rational cap (used by the cap ladder k/2^j).
inline Rat truncated_expectation(const RewardDistribution& d, const Rat& cap) {
  if (cap < 0) throw std::invalid_argument("truncated_expectation: cap < 0");
  Rat m(0);
  for (const auto& [v, p] : d.support) m += (Rat(v) <= cap ? Rat(v) : cap) * p;
  return m;
}

// Convolve a capped-sum pmf with one more reward, saturating at cap.
inline Pmf convolve_capped(const Pmf& acc, const RewardDistribution& d,
                           const Int& cap) {
  Pmf out;
  for (const auto& [s, ps] : acc) {
    for (const auto& [v, pv] : d.support) {
      Int t = s + v;
      if (t > cap) t = cap;
      out[t] += ps * pv;
    }
  }
  return out;
}

// Exact pmfs of min(sum of prefix, cap) for every prefix length 0..|ds|.
inline std::vector<Pmf> capped_prefix_distribution(
    const std::vector<RewardDistribution>& ds, const Int& cap) {
  std::vector<Pmf> out;
  out.reserve(ds.size() + 1);
  Pmf acc;
  acc[Int(0)] = Rat(1);
  out.push_back(acc);
  for (const auto& d : ds) {
    acc = convolve_capped(acc, d, cap);
    out.push_back(acc);
  }
  return out;
}

inline Rat pmf_mean(const Pmf& pmf) {
  Rat m(0);
  for (const auto& [v, p] : pmf) m += Rat(v) * p;
  return m;
}

inline Rat pmf_mass(const Pmf& pmf) {
  Rat m(0);
  for (const auto& [v, p] : pmf) m += p;
  return m;
}

// Draws an index in [0, n) where pmf weight i has probability num_i / den,
// using exact integer arithmetic (no floating point bias).
class ExactSampler {
 public:
  explicit ExactSampler(const RewardDistribution& d) : dist_(&d) {
    den_ = 1;
    for (const auto& [v, p] : d.support)
      den_ = boost::multiprecision::lcm(den_, rat_den(p));
    Int cum(0);
    for (const auto& [v, p] : d.support) {
      cum += rat_num(p) * (den_ / rat_den(p));
      cum_.push_back(cum);
    }
    small_ = den_ <= Int(std::numeric_limits<std::uint64_t>::max());
    if (small_) den64_ = static_cast<std::uint64_t>(den_);
  }

  const Int& sample(std::mt19937_64& rng) const {
    if (dist_->support.size() == 1) return dist_->support[0].first;
    Int r = small_ ? Int(draw_below64(rng)) : draw_below(rng);
    std::size_t i = 0;
    while (cum_[i] <= r) ++i;
    return dist_->support[i].first;
  }

 private:
  std::uint64_t draw_below64(std::mt19937_64& rng) const {
    std::uniform_int_distribution<std::uint64_t> u(0, den64_ - 1);
    return u(rng);
  }

  Int draw_below(std::mt19937_64& rng) const {
    unsigned bits = boost::multiprecision::msb(den_) + 1;
    for (;;) {
      Int r(0);
      for (unsigned got = 0; got < bits; got += 64) {
        r <<= 64;
        r |= Int(rng());
      }
      r >>= (64 - bits % 64) % 64;
      if (r < den_) return r;
    }
  }

  const RewardDistribution* dist_;
  std::vector<Int> cum_;
  Int den_;
  std::uint64_t den64_ = 0;
  bool small_ = false;
};

}  // namespace sktsp
