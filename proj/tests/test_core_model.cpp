#include "sktsp/distribution.hpp"
#include "sktsp/instance.hpp"
#include "sktsp/metric.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace sktsp;

namespace {

Metric make_metric(std::vector<std::vector<int>> d) {
  Metric m;
  m.n = static_cast<int>(d.size());
  m.depot = 0;
  for (auto& row : d) {
    std::vector<Rat> r;
    for (int v : row) r.emplace_back(v);
    m.dist.push_back(std::move(r));
  }
  return m;
}

RewardDistribution coin(Int hi) {
  RewardDistribution d;
  d.support.emplace_back(Int(0), Rat(1, 2));
  d.support.emplace_back(std::move(hi), Rat(1, 2));
  return d;
}

}  // namespace

TEST_CASE("metric normalization") {
  auto r1 = normalize_metric(make_metric({{0, 2}, {2, 0}}));
  CHECK(r1.metric.dist[0][1] == Rat(1));
  CHECK(r1.scale == Rat(2));

  auto r2 = normalize_metric(make_metric({{0, 1}, {1, 0}}));
  CHECK(r2.metric.dist[0][1] == Rat(1));
  CHECK(r2.scale == Rat(1));

  auto r3 = normalize_metric(make_metric({{0, 3, 6}, {3, 0, 3}, {6, 3, 0}}));
  CHECK(r3.metric.dist[0][2] == Rat(2));
  CHECK(r3.scale == Rat(3));
  r3.metric.validate();

  CHECK_THROWS_WITH(normalize_metric(make_metric({{0, 0}, {0, 0}})),
                    "degenerate metric");
}

TEST_CASE("metric validation names the offending triple") {
  auto bad = make_metric({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}});
  CHECK_THROWS_WITH(bad.validate(),
                    Catch::Matchers::ContainsSubstring("triangle inequality"));
  auto asym = make_metric({{0, 1}, {2, 0}});
  CHECK_THROWS_WITH(asym.validate(),
                    Catch::Matchers::ContainsSubstring("asymmetric"));
}

TEST_CASE("truncated expectation") {
  auto d = coin(Int(4));
  CHECK(truncated_expectation(d, Int(2)) == Rat(1));
  CHECK(truncated_expectation(d, Int(0)) == Rat(0));
  CHECK(truncated_expectation(RewardDistribution::point_mass(Int(5)), Int(7)) ==
        Rat(5));
  CHECK(truncated_expectation(d, Rat(1, 2)) == Rat(1, 4));
}

TEST_CASE("truncated expectation is monotone in the cap") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> val(0, 20), wt(1, 5), sz(1, 4);
  for (int c = 0; c < 100; ++c) {
    std::map<Int, int> weights;
    int k = sz(rng);
    for (int i = 0; i < k; ++i) weights[Int(val(rng))] += wt(rng);
    int total = 0;
    for (auto& [v, w] : weights) total += w;
    RewardDistribution d;
    for (auto& [v, w] : weights) d.support.emplace_back(v, Rat(w, total));
    Int c1(val(rng)), c2(val(rng));
    if (c1 > c2) std::swap(c1, c2);
    CHECK(truncated_expectation(d, c1) <= truncated_expectation(d, c2));
    CHECK(truncated_expectation(d, c2) <= d.mean());
  }
}

TEST_CASE("capped prefix distribution") {
  std::vector<RewardDistribution> two = {coin(Int(1)), coin(Int(1))};
  auto pre = capped_prefix_distribution(two, Int(1));
  REQUIRE(pre.size() == 3);
  CHECK(pre[2].at(Int(0)) == Rat(1, 4));
  CHECK(pre[2].at(Int(1)) == Rat(3, 4));

  auto empty = capped_prefix_distribution({}, Int(5));
  REQUIRE(empty.size() == 1);
  CHECK(empty[0].at(Int(0)) == Rat(1));

  std::vector<RewardDistribution> det = {RewardDistribution::point_mass(Int(3)),
                                         RewardDistribution::point_mass(Int(5))};
  auto sat = capped_prefix_distribution(det, Int(6));
  CHECK(sat[1].at(Int(3)) == Rat(1));
  CHECK(sat[2].at(Int(6)) == Rat(1));

  for (const auto& pmf : pre) CHECK(pmf_mass(pmf) == Rat(1));
}

TEST_CASE("serialization round-trips") {
  Instance inst;
  inst.kind = Kind::Metric;
  inst.tour_mode = TourMode::Closed;
  inst.n = 3;
  inst.depot = 0;
  inst.k = 5;
  inst.metric = make_metric({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
  inst.rewards = {RewardDistribution::point_mass(Int(0)), coin(Int(5)),
                  RewardDistribution::point_mass(Int(3))};
  inst.validate();

  std::string text = serialize_instance(inst);
  Instance back = parse_instance(text);
  CHECK(serialize_instance(back) == text);
  CHECK(back.tour_mode == TourMode::Closed);
  CHECK(back.metric.dist[0][2] == Rat(2));

  Instance ks;
  ks.kind = Kind::Knapsack;
  ks.n = 2;
  ks.depot = 0;
  ks.k = 7;
  ks.costs = {Int(0), Int(4)};
  ks.rewards = {RewardDistribution::point_mass(Int(0)),
                RewardDistribution::point_mass(Int(7))};
  ks.validate();
  CHECK(serialize_instance(parse_instance(serialize_instance(ks))) ==
        serialize_instance(ks));
}

TEST_CASE("parse errors are descriptive") {
  CHECK_THROWS_WITH(parse_instance("{"),
                    Catch::Matchers::ContainsSubstring("invalid json"));
  std::string bad_mass = R"({"kind":"knapsack","n":2,"k":"4","depot":0,
    "tour_mode":"open","costs":[0,1],
    "rewards":[{"values":["0"],"probs":["1"]},
               {"values":["0","4"],"probs":["2/5","1/2"]}]})";
  CHECK_THROWS_WITH(parse_instance(bad_mass),
                    Catch::Matchers::ContainsSubstring("mass"));
  std::string bad_triangle = R"({"kind":"metric","n":3,"k":"1","depot":0,
    "tour_mode":"open",
    "distances":[["0","1","3"],["1","0","1"],["3","1","0"]],
    "rewards":[{"values":["0"],"probs":["1"]},
               {"values":["1"],"probs":["1"]},
               {"values":["1"],"probs":["1"]}]})";
  CHECK_THROWS_WITH(parse_instance(bad_triangle),
                    Catch::Matchers::ContainsSubstring("triangle"));
}

TEST_CASE("instance invariants") {
  Instance inst;
  inst.kind = Kind::Knapsack;
  inst.n = 2;
  inst.depot = 0;
  inst.k = 3;
  inst.costs = {Int(0), Int(1)};
  inst.rewards = {RewardDistribution::point_mass(Int(0)),
                  RewardDistribution::point_mass(Int(4))};
  CHECK_THROWS_WITH(inst.validate(),
                    Catch::Matchers::ContainsSubstring("support above k"));
  inst.rewards[1] = RewardDistribution::point_mass(Int(3));
  inst.rewards[0] = RewardDistribution::point_mass(Int(1));
  CHECK_THROWS_WITH(inst.validate(),
                    Catch::Matchers::ContainsSubstring("depot reward"));
}
