#pragma once

#include "sktsp/distribution.hpp"
#include "sktsp/instance.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <vector>

namespace sktsp {

// splitmix64 finalizer; trial j of a run with master seed s uses
// derive_seed(s, j), so results do not depend on execution schedule.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Pre-built exact samplers for every vertex of an instance; shared across
// trials (immutable after construction).
class InstanceSamplers {
 public:
  explicit InstanceSamplers(const Instance& inst) {
    samplers_.reserve(inst.n);
    for (int v = 0; v < inst.n; ++v)
      samplers_.emplace_back(inst.rewards[v]);
  }
  const ExactSampler& at(int v) const { return samplers_[v]; }

 private:
  std::vector<ExactSampler> samplers_;
};

// One trial's reward source: draws each vertex's reward lazily, exactly once.
class TrialSampler {
 public:
  TrialSampler(const InstanceSamplers& samplers, int n, std::uint64_t seed)
      : samplers_(&samplers), drawn_(n), rng_(seed) {}

  const Int& reward(int v) {
    if (!drawn_[v]) drawn_[v] = samplers_->at(v).sample(rng_);
    return *drawn_[v];
  }

 private:
  const InstanceSamplers* samplers_;
  std::vector<std::optional<Int>> drawn_;
  std::mt19937_64 rng_;
};

}  // namespace sktsp
