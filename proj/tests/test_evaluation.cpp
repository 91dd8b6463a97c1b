#include "sktsp/evaluation.hpp"
#include "sktsp/generators.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace sktsp;

namespace {

RatPmf bernoulli_half() {
  return {{Rat(0), Rat(1, 2)}, {Rat(1), Rat(1, 2)}};
}

}  // namespace

TEST_CASE("deterministic instances have zero variance") {
  Instance inst = gen_example1(3);
  AdaptiveConfig cfg;
  cfg.oracle = OracleKind::Knapsack;
  auto s = monte_carlo_adaptive(inst, cfg, 50, 123);
  CHECK(s.variance == 0.0);
  InstanceSamplers samplers(inst);
  TrialSampler ts(samplers, inst.n, 1);
  auto one = run_adaptive(inst, cfg, ts);
  CHECK(s.mean_exact == one.total_length);
}

TEST_CASE("equal seeds reproduce summaries exactly") {
  // Seed 95 gives an instance whose run length actually varies across draws.
  Instance inst = gen_random(5, Int(8), 95);
  AdaptiveConfig cfg;
  auto a = monte_carlo_adaptive(inst, cfg, 500, 42);
  auto b = monte_carlo_adaptive(inst, cfg, 500, 42);
  CHECK(a.mean_exact == b.mean_exact);
  CHECK(a.variance == b.variance);
  CHECK(a.variance > 0.0);
  auto c = monte_carlo_adaptive(inst, cfg, 500, 43);
  CHECK(a.mean_exact != c.mean_exact);  // different seed, different draws
}

TEST_CASE("pooled continuation estimates are non-increasing") {
  Instance inst = gen_random(6, Int(10), 7);
  AdaptiveConfig cfg;
  auto s = monte_carlo_adaptive(inst, cfg, 2000, 11);
  for (std::size_t i = 1; i < s.phases.phases(); ++i)
    CHECK(s.phases.u_hat(i) <= s.phases.u_hat(i - 1));
}

TEST_CASE("harmonic bound holds on sampled traces") {
  std::mt19937_64 rng(61);
  for (int c = 0; c < 10; ++c) {
    Instance inst = gen_random(5, Int(8), rng());
    AdaptiveConfig cfg;
    auto s = monte_carlo_adaptive(inst, cfg, 200, 17, /*check_harmonic=*/true);
    CHECK(s.all_harmonic_ok);
  }
}

TEST_CASE("single full-residual iteration contributes exactly 1") {
  Instance inst = gen_example1(3);
  RunTrace trace;
  IterationRecord rec;
  rec.phase = 0;
  rec.residual_before = inst.k;
  rec.residual_after = 0;
  rec.incremental = inst.k;
  rec.gain_realized = Rat(1);
  trace.iters.push_back(rec);
  CHECK(check_harmonic_bound(trace, inst.k));
}

TEST_CASE("capped-sum bound on hand examples") {
  auto single = check_capped_sum({bernoulli_half()});
  CHECK(single.expected_sum == Rat(1, 2));
  CHECK(single.expected_capped == Rat(1, 2));
  CHECK(single.pass);

  auto two = check_capped_sum({bernoulli_half(), bernoulli_half()});
  CHECK(two.expected_sum == Rat(1));
  CHECK(two.expected_capped == Rat(3, 4));
  CHECK(two.pass);

  RatPmf bad = {{Rat(3, 2), Rat(1)}};
  CHECK_THROWS_WITH(check_capped_sum({bad}),
                    Catch::Matchers::ContainsSubstring("[0,1]"));
}

TEST_CASE("capped-sum bound on random batches") {
  std::mt19937_64 rng(67);
  std::uniform_int_distribution<int> batch(1, 5);
  for (int c = 0; c < 200; ++c) {
    std::vector<RatPmf> vars;
    int sz = batch(rng);
    for (int i = 0; i < sz; ++i) vars.push_back(random_unit_pmf(rng));
    CHECK(check_capped_sum(vars).pass);
  }
}

TEST_CASE("lemma verdicts pass with the exact oracle and paper alpha") {
  Instance inst = gen_gap_instance(2, {Rat(1, 2), Rat(1, 2)});
  AdaptiveConfig cfg;
  cfg.oracle = OracleKind::Knapsack;
  auto s = monte_carlo_adaptive(inst, cfg, 10000, 21);
  auto policy = optimal_adaptive(inst);
  auto profile = completion_profile(policy, inst);
  for (const auto& v : check_lemma_main(s.phases, profile)) {
    CHECK(v.has_u_star);
    CHECK(v.pass);
  }
}

TEST_CASE("deterministic completion in phase 0 passes trivially") {
  Instance inst;
  inst.kind = Kind::Metric;
  inst.n = 2;
  inst.depot = 0;
  inst.k = 1;
  inst.metric.n = 2;
  inst.metric.depot = 0;
  inst.metric.dist = {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}};
  inst.rewards = {RewardDistribution::point_mass(Int(0)),
                  RewardDistribution::point_mass(Int(1))};
  AdaptiveConfig cfg;
  auto s = monte_carlo_adaptive(inst, cfg, 100, 3);
  REQUIRE(s.phases.phases() <= 1);
  auto policy = optimal_adaptive(inst);
  auto profile = completion_profile(policy, inst);
  for (const auto& v : check_lemma_main(s.phases, profile)) CHECK(v.pass);
}

TEST_CASE("sampled mean respects the phase-sum upper bound") {
  Instance inst = gen_random(5, Int(8), 101);
  AdaptiveConfig cfg;
  auto s = monte_carlo_adaptive(inst, cfg, 2000, 5);
  CHECK(check_alg_bound(s, cfg.alpha_for(inst.k)));
}
