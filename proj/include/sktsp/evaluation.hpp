#pragma once

#include "sktsp/adaptive.hpp"
#include "sktsp/exact_opt.hpp"
#include "sktsp/instance.hpp"
#include "sktsp/nonadaptive.hpp"
#include "sktsp/numeric.hpp"
#include "sktsp/rng.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace sktsp {

// Per-phase aggregates over a batch of traces. Continuation counts are
// integers, so pooled u-hat estimates are exactly monotone.
struct PhaseStats {
  long trials = 0;
  std::vector<long> beyond_count;          // trials continuing beyond phase i
  std::vector<Rat> gain_sum;               // sum over trials of phase gain sums
  std::vector<std::map<int, Rat>> iter_gain_sum;  // per (phase, t) realized gain
  std::vector<std::optional<Rat>> u_star;  // exact, when a profile is attached

  double u_hat(std::size_t i) const {
    if (i >= beyond_count.size()) return 0.0;
    return static_cast<double>(beyond_count[i]) / static_cast<double>(trials);
  }

  double u_hat_stderr(std::size_t i) const {
    double u = u_hat(i);
    return std::sqrt(u * (1.0 - u) / static_cast<double>(trials));
  }

  std::size_t phases() const { return beyond_count.size(); }

  void ensure_phase(std::size_t i) {
    if (beyond_count.size() <= i) {
      beyond_count.resize(i + 1, 0);
      gain_sum.resize(i + 1, Rat(0));
      iter_gain_sum.resize(i + 1);
    }
  }

  void absorb(const RunTrace& trace) {
    ++trials;
    if (trace.last_phase >= 0) ensure_phase(static_cast<std::size_t>(trace.last_phase));
    for (int i = 0; i < trace.last_phase; ++i) ++beyond_count[i];
    for (const auto& rec : trace.iters) {
      gain_sum[rec.phase] += rec.gain_realized;
      iter_gain_sum[rec.phase][rec.iter] += rec.gain_realized;
    }
  }
};

struct MonteCarloSummary {
  long trials = 0;
  Rat mean_exact{0};      // exact rational mean of realized lengths
  double mean = 0.0;
  double variance = 0.0;  // sample variance
  double std_error = 0.0;
  PhaseStats phases;
  bool all_harmonic_ok = true;  // per-trace harmonic bound, when checked
};

// Per-realization harmonic bound: within each phase of a single trace,
// sum_t J_t / (residual before t) <= H_k. Deterministic, zero tolerance.
inline bool check_harmonic_bound(const RunTrace& trace, const Int& k) {
  if (k < 1) return true;
  Rat h = harmonic(k);
  std::map<int, Rat> per_phase;
  for (const auto& rec : trace.iters) per_phase[rec.phase] += rec.gain_realized;
  for (const auto& [phase, sum] : per_phase)
    if (sum > h) return false;
  return true;
}

inline MonteCarloSummary monte_carlo_adaptive(const Instance& inst,
                                              const AdaptiveConfig& cfg,
                                              long trials, std::uint64_t seed,
                                              bool check_harmonic = false) {
  if (trials < 1) throw std::invalid_argument("monte_carlo: trials must be >= 1");
  MonteCarloSummary s;
  InstanceSamplers samplers(inst);
  OracleCache cache;
  double sumsq = 0.0;
  for (long j = 0; j < trials; ++j) {
    TrialSampler ts(samplers, inst.n, derive_seed(seed, static_cast<std::uint64_t>(j)));
    RunTrace trace = run_adaptive(inst, cfg, ts, &cache);
    s.mean_exact += trace.total_length;
    double x = static_cast<double>(Real(trace.total_length));
    sumsq += x * x;
    s.phases.absorb(trace);
    if (check_harmonic && !check_harmonic_bound(trace, inst.k))
      s.all_harmonic_ok = false;
  }
  s.trials = trials;
  s.mean_exact /= trials;
  s.mean = static_cast<double>(Real(s.mean_exact));
  if (trials > 1) {
    s.variance = (sumsq - trials * s.mean * s.mean) / (trials - 1);
    if (s.variance < 0) s.variance = 0;
  }
  s.std_error = std::sqrt(s.variance / trials);
  return s;
}

inline MonteCarloSummary monte_carlo_nonadaptive(const Instance& inst,
                                                 const NonAdaptiveTour& tour,
                                                 long trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("monte_carlo: trials must be >= 1");
  MonteCarloSummary s;
  InstanceSamplers samplers(inst);
  double sumsq = 0.0;
  for (long j = 0; j < trials; ++j) {
    TrialSampler ts(samplers, inst.n, derive_seed(seed, static_cast<std::uint64_t>(j)));
    RunTrace trace = execute_nonadaptive(inst, tour, ts);
    s.mean_exact += trace.total_length;
    double x = static_cast<double>(Real(trace.total_length));
    sumsq += x * x;
    ++s.phases.trials;
  }
  s.trials = trials;
  s.mean_exact /= trials;
  s.mean = static_cast<double>(Real(s.mean_exact));
  if (trials > 1) {
    s.variance = (sumsq - trials * s.mean * s.mean) / (trials - 1);
    if (s.variance < 0) s.variance = 0;
  }
  s.std_error = std::sqrt(s.variance / trials);
  return s;
}

// Verdict of u_i <= u_{i-1}/4 + u*_i + slack for one phase.
struct LemmaVerdict {
  int phase = 0;
  double u_i = 0.0;
  double u_prev = 0.0;
  double u_star = 0.0;
  double slack = 0.0;
  bool has_u_star = true;
  bool pass = true;
};

// Empirical form of the main per-phase inequality. Slack defaults to three
// standard errors of the u_i estimate.
inline std::vector<LemmaVerdict> check_lemma_main(const PhaseStats& stats,
                                                  const CompletionProfile& profile,
                                                  std::optional<double> slack = {}) {
  std::vector<LemmaVerdict> out;
  for (std::size_t i = 1; i < stats.phases(); ++i) {
    LemmaVerdict v;
    v.phase = static_cast<int>(i);
    v.u_i = stats.u_hat(i);
    v.u_prev = stats.u_hat(i - 1);
    v.u_star = static_cast<double>(Real(profile.beyond(static_cast<unsigned>(i))));
    v.slack = slack ? *slack : 3.0 * stats.u_hat_stderr(i);
    v.pass = v.u_i <= v.u_prev / 4.0 + v.u_star + v.slack;
    out.push_back(v);
  }
  return out;
}

// ---- capped-sum theorem check (independent [0,1] variables) ----

using RatPmf = std::map<Rat, Rat>;

struct CappedSumResult {
  Rat expected_sum;     // E[X]
  Rat expected_capped;  // E[Y], Y = min(X, 1)
  bool pass = true;
};

// E[Y] >= (1 - 1/e) * min(E[X], 1) for independent [0,1]-valued variables,
// checked in exact arithmetic against a certified lower bound of 1 - 1/e.
inline CappedSumResult check_capped_sum(const std::vector<RatPmf>& vars) {
  Rat ex(0);
  RatPmf acc;
  acc[Rat(0)] = Rat(1);
  for (const auto& var : vars) {
    Rat mass(0);
    for (const auto& [v, p] : var) {
      if (v < 0 || v > 1)
        throw std::invalid_argument("check_capped_sum: support outside [0,1]");
      if (p <= 0) throw std::invalid_argument("check_capped_sum: bad probability");
      ex += v * p;
      mass += p;
    }
    if (mass != 1) throw std::invalid_argument("check_capped_sum: pmf mass != 1");
    RatPmf next;
    for (const auto& [s, ps] : acc)
      for (const auto& [v, pv] : var) {
        Rat t = s + v;
        if (t > 1) t = Rat(1);
        next[t] += ps * pv;
      }
    acc = std::move(next);
  }
  CappedSumResult r;
  r.expected_sum = ex;
  for (const auto& [v, p] : acc) r.expected_capped += v * p;
  Rat bound = one_minus_inv_e_lb() * (ex < 1 ? ex : Rat(1));
  r.pass = r.expected_capped >= bound;
  return r;
}

// Random small-support pmf on exact rationals in [0,1].
inline RatPmf random_unit_pmf(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> sz(1, 3), den(1, 8), wt(1, 7);
  RatPmf weights;
  int count = sz(rng);
  for (int s = 0; s < count; ++s) {
    int b = den(rng);
    std::uniform_int_distribution<int> num(0, b);
    weights[Rat(num(rng), b)] += wt(rng);
  }
  Rat total(0);
  for (const auto& [v, w] : weights) total += w;
  RatPmf pmf;
  for (const auto& [v, w] : weights) pmf[v] = w / total;
  return pmf;
}

// ALG <= 2 alpha sum_i 2^i u_i + 4 alpha, in sampled form.
inline bool check_alg_bound(const MonteCarloSummary& s, long alpha,
                            double slack_sigmas = 4.0) {
  double rhs = 4.0 * static_cast<double>(alpha);
  for (std::size_t i = 1; i < s.phases.phases(); ++i)
    rhs += 2.0 * static_cast<double>(alpha) * std::pow(2.0, static_cast<double>(i)) *
           s.phases.u_hat(i);
  return s.mean <= rhs + slack_sigmas * s.std_error;
}

}  // namespace sktsp
