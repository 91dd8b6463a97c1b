#include "sktsp/bidding.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace sktsp;

TEST_CASE("bid cost is the prefix sum through the first covering bid") {
  CHECK(bid_cost({1, 2, 4}, 3) == Int(7));
  CHECK(bid_cost({1, 2, 4}, 1) == Int(1));
  CHECK_FALSE(bid_cost({2}, 3).has_value());
  CHECK_THROWS(bid_cost({}, 1));
}

TEST_CASE("gamma enumeration") {
  CHECK(enumerate_gamma(1) == std::vector<BidSequence>{{1}});
  CHECK(enumerate_gamma(2).size() == 3);
  CHECK(enumerate_gamma(3).size() == 7);
  auto covering = enumerate_gamma(3, true);
  CHECK(covering.size() == 4);
  for (const auto& seq : covering) CHECK(seq.back() == 3);
  for (const auto& seq : enumerate_gamma(4))
    CHECK(std::is_sorted(seq.begin(), seq.end()));
  CHECK_THROWS(enumerate_gamma(17));
}

TEST_CASE("bidding LP values at small n") {
  auto lp1 = solve_bidding_lp(1);
  REQUIRE(lp1.exact);
  CHECK(lp1.value_rat == Rat(1));

  auto lp2 = solve_bidding_lp(2);
  REQUIRE(lp2.exact);
  CHECK(lp2.value_rat == Rat(4, 3));
  REQUIRE(lp2.p_rat.size() == 2);
  CHECK(lp2.p_rat[0] == Rat(1, 2));
  CHECK(lp2.p_rat[1] == Rat(1, 2));
  CHECK(lp2.duality_gap <= 1e-9);

  Rat mass(0);
  for (const auto& p : lp2.p_rat) mass += p;
  CHECK(mass == Rat(1));
  double pi_mass = 0;
  for (const auto& [seq, w] : lp2.sequence_dist) pi_mass += w;
  CHECK(std::abs(pi_mass - 1.0) <= 1e-9);
}

TEST_CASE("values are nondecreasing and stay below e") {
  const double e = std::exp(1.0);
  double prev = 0.0;
  double v4 = 0.0, v12 = 0.0;
  for (int n = 1; n <= 12; ++n) {
    auto lp = solve_bidding_lp(n);
    CHECK(lp.value >= prev - 1e-9);
    CHECK(lp.value <= e + 1e-6);
    CHECK(lp.duality_gap <= 1e-9);
    prev = lp.value;
    if (n == 4) v4 = lp.value;
    if (n == 12) v12 = lp.value;
  }
  CHECK(v12 > v4);
}

TEST_CASE("minimax equality on hand matrices") {
  auto one = verify_minimax({{5.0}});
  CHECK(one.lhs == Catch::Approx(5.0));
  CHECK(one.rhs == Catch::Approx(5.0));
  CHECK(one.pass);

  // Bidding matrix for n=2 over covering sequences (2) and (1,2).
  auto two = verify_minimax({{2.0, 2.0}, {1.0, 3.0}});
  CHECK(two.lhs == Catch::Approx(4.0 / 3.0));
  CHECK(two.rhs == Catch::Approx(4.0 / 3.0));
  CHECK(two.pass);

  std::vector<std::vector<double>> neg = {{-1.0}};
  CHECK_THROWS(verify_minimax(neg));
}

TEST_CASE("minimax equality on random matrices") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> entry(0.0, 10.0);
  for (int c = 0; c < 200; ++c) {
    std::vector<std::vector<double>> C(8, std::vector<double>(4));
    for (auto& row : C)
      for (auto& v : row) v = entry(rng);
    auto res = verify_minimax(C);
    CHECK(res.pass);
  }
}
