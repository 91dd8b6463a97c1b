#pragma once

#include "sktsp/distribution.hpp"
#include "sktsp/metric.hpp"
#include "sktsp/numeric.hpp"

#include <json.hpp>

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace sktsp {

enum class Kind { Metric, Knapsack };
enum class TourMode { Open, Closed };

// A stochastic k-TSP instance. The knapsack kind is the weighted-star case:
// walking "into" an item charges its cost and nothing else, so an
// orienteering budget bounds the sum of selected item costs.
struct Instance {
  Kind kind = Kind::Metric;
  TourMode tour_mode = TourMode::Open;
  int n = 0;
  int depot = 0;
  Int k;
  Metric metric;            // kind == Metric
  std::vector<Int> costs;   // kind == Knapsack, costs[depot] == 0
  std::vector<RewardDistribution> rewards;

  // Length charged when stepping from `from` to `to`.
  Rat enter_cost(int from, int to) const {
    if (kind == Kind::Metric) return metric.dist[from][to];
    return Rat(costs[to]);
  }

  // Final return leg; only charged in closed mode for metric instances.
  Rat return_cost(int v) const {
    if (kind == Kind::Metric && tour_mode == TourMode::Closed)
      return metric.dist[v][depot];
    return Rat(0);
  }

  void validate() const {
    if (n <= 0) throw std::invalid_argument("instance: n must be positive");
    if (depot < 0 || depot >= n)
      throw std::invalid_argument("instance: depot out of range");
    if (k < 0) throw std::invalid_argument("instance: negative target");
    if (static_cast<int>(rewards.size()) != n)
      throw std::invalid_argument("instance: rewards size != n");
    for (int v = 0; v < n; ++v) {
      rewards[v].validate();
      if (rewards[v].max_value() > k)
        throw std::invalid_argument("instance: reward support above k at vertex " +
                                    std::to_string(v));
    }
    if (!rewards[depot].is_point_mass_zero())
      throw std::invalid_argument("instance: depot reward must be point mass at 0");
    if (kind == Kind::Metric) {
      if (metric.n != n || metric.depot != depot)
        throw std::invalid_argument("instance: metric header mismatch");
      metric.validate();
    } else {
      if (static_cast<int>(costs.size()) != n)
        throw std::invalid_argument("instance: costs size != n");
      for (int v = 0; v < n; ++v) {
        if (costs[v] < 0) throw std::invalid_argument("instance: negative cost");
      }
      if (costs[depot] != 0)
        throw std::invalid_argument("instance: depot cost must be 0");
    }
  }
};

// Visited set with observed rewards; k_sigma is the observed total.
struct PolicyState {
  std::set<int> S;
  std::map<int, Int> sigma;
  Int k_sigma{0};

  void observe(int v, const Int& reward) {
    S.insert(v);
    sigma[v] = reward;
    k_sigma += reward;
  }
};

inline nlohmann::ordered_json instance_to_json(const Instance& inst) {
  nlohmann::ordered_json j;
  j["kind"] = inst.kind == Kind::Metric ? "metric" : "knapsack";
  j["n"] = inst.n;
  j["k"] = inst.k.str();
  j["depot"] = inst.depot;
  j["tour_mode"] = inst.tour_mode == TourMode::Open ? "open" : "closed";
  if (inst.kind == Kind::Metric) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : inst.metric.dist) {
      auto r = nlohmann::ordered_json::array();
      for (const auto& d : row) r.push_back(rat_to_string(d));
      rows.push_back(std::move(r));
    }
    j["distances"] = std::move(rows);
  } else {
    auto cs = nlohmann::ordered_json::array();
    for (const auto& c : inst.costs) {
      if (c <= Int(std::numeric_limits<long long>::max()))
        cs.push_back(static_cast<long long>(c));
      else
        cs.push_back(c.str());
    }
    j["costs"] = std::move(cs);
  }
  auto rs = nlohmann::ordered_json::array();
  for (const auto& d : inst.rewards) {
    nlohmann::ordered_json rj;
    auto vals = nlohmann::ordered_json::array();
    auto probs = nlohmann::ordered_json::array();
    for (const auto& [v, p] : d.support) {
      vals.push_back(v.str());
      probs.push_back(rat_to_string(p));
    }
    rj["values"] = std::move(vals);
    rj["probs"] = std::move(probs);
    rs.push_back(std::move(rj));
  }
  j["rewards"] = std::move(rs);
  return j;
}

inline std::string serialize_instance(const Instance& inst) {
  return instance_to_json(inst).dump(2) + "\n";
}

inline Instance parse_instance(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("instance: invalid json: ") + e.what());
  }
  Instance inst;
  try {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "metric") inst.kind = Kind::Metric;
    else if (kind == "knapsack") inst.kind = Kind::Knapsack;
    else throw std::invalid_argument("instance: unknown kind '" + kind + "'");
    inst.n = j.at("n").get<int>();
    inst.k = Int(j.at("k").get<std::string>());
    inst.depot = j.at("depot").get<int>();
    std::string mode = j.value("tour_mode", "open");
    if (mode == "open") inst.tour_mode = TourMode::Open;
    else if (mode == "closed") inst.tour_mode = TourMode::Closed;
    else throw std::invalid_argument("instance: unknown tour_mode '" + mode + "'");
    if (inst.kind == Kind::Metric) {
      const auto& rows = j.at("distances");
      inst.metric.n = inst.n;
      inst.metric.depot = inst.depot;
      for (const auto& row : rows) {
        std::vector<Rat> r;
        for (const auto& cell : row)
          r.push_back(parse_rational(cell.get<std::string>()));
        inst.metric.dist.push_back(std::move(r));
      }
    } else {
      for (const auto& c : j.at("costs")) {
        if (c.is_number_integer()) inst.costs.push_back(Int(c.get<long long>()));
        else inst.costs.push_back(Int(c.get<std::string>()));
      }
    }
    for (const auto& rj : j.at("rewards")) {
      RewardDistribution d;
      const auto& vals = rj.at("values");
      const auto& probs = rj.at("probs");
      if (vals.size() != probs.size())
        throw std::invalid_argument("instance: values/probs length mismatch");
      for (std::size_t i = 0; i < vals.size(); ++i) {
        d.support.emplace_back(Int(vals[i].get<std::string>()),
                               parse_rational(probs[i].get<std::string>()));
      }
      std::sort(d.support.begin(), d.support.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      inst.rewards.push_back(std::move(d));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("instance: schema violation: ") + e.what());
  }
  inst.validate();
  return inst;
}

}  // namespace sktsp
