// Command-line front end: generate instances, run policies, compute exact
// optima, solve the bidding LP, and run invariant check suites.

#include "sktsp/adaptive.hpp"
#include "sktsp/bidding.hpp"
#include "sktsp/evaluation.hpp"
#include "sktsp/exact_opt.hpp"
#include "sktsp/generators.hpp"
#include "sktsp/instance.hpp"
#include "sktsp/nonadaptive.hpp"
#include "sktsp/orienteering.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace sktsp;

constexpr const char* kArtifactVersion = "1";

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

struct GlobalOpts {
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
  std::string tour_mode = "open";
};

std::string manifest_line(const std::string& command, const GlobalOpts& g,
                          const std::string& extra = "") {
  std::ostringstream os;
  os << "# manifest version=" << kArtifactVersion << " command=" << command
     << " seed=" << g.seed << " format=" << g.format
     << " tour-mode=" << g.tour_mode;
  if (!extra.empty()) os << ' ' << extra;
  return os.str();
}

void emit(const GlobalOpts& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + g.out);
  f << text;
}

Instance load_instance(const std::string& path, const GlobalOpts& g) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open instance file: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  Instance inst = parse_instance(buf.str());
  inst.tour_mode = g.tour_mode == "closed" ? TourMode::Closed : TourMode::Open;
  return inst;
}

OracleKind parse_oracle(const std::string& name) {
  if (name == "exact") return OracleKind::Exact;
  if (name == "knapsack") return OracleKind::Knapsack;
  if (name == "heuristic") return OracleKind::Heuristic;
  if (name == "brute") return OracleKind::BruteForce;
  throw CLI::ValidationError("--oracle", "unknown oracle: " + name);
}

int cmd_gen(const GlobalOpts& g, const std::string& family, int l, int h, int t,
            int m, int n, long long k, const std::string& geometry) {
  Instance inst;
  if (family == "example1") {
    inst = gen_example1(l);
  } else if (family == "example2") {
    inst = gen_example2(h, t);
  } else if (family == "example3") {
    inst = gen_example3(l);
  } else if (family == "example4") {
    inst = gen_example4(l, h, m);
  } else if (family == "gap") {
    inst = gen_gap_instance(n);
  } else if (family == "random") {
    inst = gen_random(n, Int(k), g.seed,
                      geometry == "points" ? Geometry::Points : Geometry::Star);
  } else {
    throw CLI::ValidationError("family", "unknown family: " + family);
  }
  if (g.tour_mode == "closed") {
    if (inst.kind == Kind::Knapsack)
      throw std::runtime_error("tour-mode closed requires a metric instance");
    inst.tour_mode = TourMode::Closed;
  }

  auto j = instance_to_json(inst);
  j["manifest"] = {{"version", kArtifactVersion},
                   {"command", "gen " + family},
                   {"seed", g.seed}};
  emit(g, j.dump(2) + "\n");
  std::cerr << "generated: n=" << inst.n << " k=" << inst.k.str() << " kind="
            << (inst.kind == Kind::Metric ? "metric" : "knapsack") << "\n";
  return 0;
}

int cmd_run(const GlobalOpts& g, const std::string& path,
            const std::string& policy, long trials, long alpha_override,
            bool no_early_stop, const std::string& oracle) {
  Instance inst = load_instance(path, g);
  OracleKind kind = parse_oracle(oracle);
  if (kind == OracleKind::Knapsack && inst.kind != Kind::Knapsack) {
    std::cerr << "error: knapsack oracle requires a knapsack instance\n";
    return 2;
  }

  std::ostringstream rep;
  std::string extra = "instance-hash=" + std::to_string(fnv1a(serialize_instance(inst))) +
                      " trials=" + std::to_string(trials);
  rep << manifest_line("run " + policy, g, extra) << "\n";

  if (policy == "adaptive") {
    AdaptiveConfig cfg;
    cfg.oracle = kind;
    cfg.early_stop = !no_early_stop;
    if (alpha_override > 0) cfg.alpha_override = alpha_override;
    auto s = monte_carlo_adaptive(inst, cfg, trials, g.seed);
    rep << "metric,value\n";
    rep << "trials," << s.trials << "\n";
    rep << "mean_exact," << rat_to_string(s.mean_exact) << "\n";
    rep << "mean," << s.mean << "\n";
    rep << "std_error," << s.std_error << "\n";
    rep << "ci95_lo," << s.mean - 1.96 * s.std_error << "\n";
    rep << "ci95_hi," << s.mean + 1.96 * s.std_error << "\n";
    rep << "phase,u_hat,u_hat_stderr,mean_gain\n";
    for (std::size_t i = 0; i < s.phases.phases(); ++i) {
      double gain = s.phases.trials
                        ? static_cast<double>(Real(s.phases.gain_sum[i])) / s.phases.trials
                        : 0.0;
      rep << i << ',' << s.phases.u_hat(i) << ',' << s.phases.u_hat_stderr(i)
          << ',' << gain << "\n";
    }
  } else if (policy == "nonadaptive") {
    NonAdaptiveConfig cfg;
    cfg.oracle = kind;
    if (alpha_override > 0) cfg.alpha_override = alpha_override;
    auto tour = build_nonadaptive(inst, cfg);
    auto s = monte_carlo_nonadaptive(inst, tour, trials, g.seed);
    rep << "metric,value\n";
    rep << "tour_size," << tour.tau.size() << "\n";
    rep << "expected_length_exact," << rat_to_string(expected_length_exact(inst, tour))
        << "\n";
    rep << "trials," << s.trials << "\n";
    rep << "mean," << s.mean << "\n";
    rep << "std_error," << s.std_error << "\n";
  } else {
    throw CLI::ValidationError("--policy", "unknown policy: " + policy);
  }
  emit(g, rep.str());
  return 0;
}

int cmd_opt(const GlobalOpts& g, const std::string& path) {
  Instance inst = load_instance(path, g);
  std::ostringstream rep;
  rep << manifest_line("opt", g,
                       "instance-hash=" + std::to_string(fnv1a(serialize_instance(inst))))
      << "\n";
  auto policy = optimal_adaptive(inst);
  auto [order, na_cost] = optimal_nonadaptive(inst);
  rep << "metric,value\n";
  rep << "opt_adaptive," << rat_to_string(policy.value()) << "\n";
  rep << "opt_nonadaptive," << rat_to_string(na_cost) << "\n";
  rep << "nonadaptive_order,";
  for (std::size_t i = 0; i < order.size(); ++i)
    rep << (i ? " " : "") << order[i];
  rep << "\n";
  auto profile = completion_profile(policy, inst);
  rep << "phase,beyond_prob\n";
  for (unsigned i = 0; i <= profile.max_meaningful_index(); ++i)
    rep << i << ',' << rat_to_string(profile.beyond(i)) << "\n";
  emit(g, rep.str());
  return 0;
}

int cmd_orienteer(const GlobalOpts& g, const std::string& path,
                  const std::string& budget, const std::string& oracle) {
  Instance inst = load_instance(path, g);
  OrienteeringProblem p;
  p.inst = &inst;
  p.root = inst.depot;
  p.budget = parse_rational(budget);
  p.profits.resize(inst.n, Rat(0));
  for (int v = 0; v < inst.n; ++v)
    p.profits[v] = truncated_expectation(inst.rewards[v], inst.k);

  OracleKind kind = parse_oracle(oracle);
  OracleResult res;
  switch (kind) {
    case OracleKind::Exact: res = solve_exact(p); break;
    case OracleKind::Knapsack: res = solve_knapsack(p); break;
    case OracleKind::BruteForce: res = brute_force(p); break;
    default: res = solve_heuristic(p); break;
  }

  std::ostringstream rep;
  rep << manifest_line("orienteer", g, "budget=" + budget) << "\n";
  rep << "metric,value\n";
  rep << "length," << rat_to_string(res.length) << "\n";
  rep << "profit," << rat_to_string(res.profit) << "\n";
  rep << "walk,";
  for (std::size_t i = 0; i < res.walk.size(); ++i)
    rep << (i ? " " : "") << res.walk[i];
  rep << "\n";
  emit(g, rep.str());
  return 0;
}

int cmd_gaplp(const GlobalOpts& g, int n, int sweep) {
  std::ostringstream rep;
  rep << manifest_line("gaplp", g) << "\n";
  rep << "n,value,duality_gap,p\n";
  int lo = sweep > 0 ? 1 : n;
  int hi = sweep > 0 ? sweep : n;
  for (int m = lo; m <= hi; ++m) {
    auto lp = solve_bidding_lp(m);
    rep << m << ',' << std::setprecision(15) << lp.value << ',' << lp.duality_gap << ',';
    for (int i = 0; i < m; ++i) rep << (i ? " " : "") << lp.p[i];
    rep << "\n";
  }
  emit(g, rep.str());
  return 0;
}

int cmd_check(const GlobalOpts& g, const std::string& suite, long cases,
              long trials) {
  std::ostringstream rep;
  rep << manifest_line("check " + suite, g, "cases=" + std::to_string(cases))
      << "\n";
  rep << "suite,cases,failures\n";
  bool all_pass = true;
  std::mt19937_64 rng(g.seed);

  auto run_suite = [&](const std::string& name, auto&& fn) {
    if (suite != "all" && suite != name) return;
    long failures = fn();
    rep << name << ',' << cases << ',' << failures << "\n";
    if (failures > 0) all_pass = false;
  };

  run_suite("capped-sum", [&]() {
    long failures = 0;
    std::uniform_int_distribution<int> batch(1, 5);
    for (long c = 0; c < cases; ++c) {
      std::vector<RatPmf> vars;
      int sz = batch(rng);
      for (int i = 0; i < sz; ++i) vars.push_back(random_unit_pmf(rng));
      if (!check_capped_sum(vars).pass) ++failures;
    }
    return failures;
  });

  run_suite("minimax", [&]() {
    long failures = 0;
    std::uniform_real_distribution<double> entry(0.0, 10.0);
    for (long c = 0; c < cases; ++c) {
      std::vector<std::vector<double>> C(8, std::vector<double>(4));
      for (auto& row : C)
        for (auto& v : row) v = entry(rng);
      if (!verify_minimax(C).pass) ++failures;
    }
    return failures;
  });

  run_suite("harmonic", [&]() {
    long failures = 0;
    for (long c = 0; c < cases; ++c) {
      Instance inst = gen_random(5, Int(8), rng());
      AdaptiveConfig cfg;
      InstanceSamplers samplers(inst);
      OracleCache cache;
      for (long tr = 0; tr < trials; ++tr) {
        TrialSampler ts(samplers, inst.n, derive_seed(g.seed, tr));
        auto trace = run_adaptive(inst, cfg, ts, &cache);
        if (!check_harmonic_bound(trace, inst.k)) ++failures;
      }
    }
    return failures;
  });

  run_suite("lemma1", [&]() {
    long failures = 0;
    for (long c = 0; c < cases; ++c) {
      Instance inst = gen_random(5, Int(8), rng());
      AdaptiveConfig cfg;
      auto s = monte_carlo_adaptive(inst, cfg, trials, g.seed);
      auto policy = optimal_adaptive(inst);
      auto profile = completion_profile(policy, inst);
      for (const auto& v : check_lemma_main(s.phases, profile))
        if (!v.pass) ++failures;
    }
    return failures;
  });

  rep << "overall," << (all_pass ? "pass" : "fail") << ",\n";
  emit(g, rep.str());
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochastic k-TSP toolkit"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--seed", g.seed, "master RNG seed");
  app.add_option("--out", g.out, "output file (default stdout)");
  app.add_option("--format", g.format, "csv|json-like")
      ->check(CLI::IsMember({"csv", "json-like"}));
  app.add_option("--tour-mode", g.tour_mode, "open|closed")
      ->check(CLI::IsMember({"open", "closed"}));

  // gen
  auto* gen = app.add_subcommand("gen", "generate an instance");
  std::string family, geometry = "star";
  int l = 4, h = 1, t = 2, m = 0, n = 2;
  long long k = 8;
  gen->add_option("family", family, "example1|example2|example3|example4|gap|random")
      ->required();
  gen->add_option("--l", l, "ladder size");
  gen->add_option("--hrep", h, "inner repetition count");
  gen->add_option("--t", t, "phase count");
  gen->add_option("--m", m, "truncation count (0 = auto)");
  gen->add_option("--n", n, "vertex / threshold count");
  gen->add_option("--k", k, "reward target");
  gen->add_option("--geometry", geometry, "star|points")
      ->check(CLI::IsMember({"star", "points"}));

  // run
  auto* run = app.add_subcommand("run", "run a policy with Monte Carlo trials");
  std::string run_instance, policy = "adaptive", oracle = "exact";
  long trials = 1000, alpha_override = 0;
  bool no_early_stop = false;
  run->add_option("--instance", run_instance, "instance file")->required();
  run->add_option("--policy", policy, "adaptive|nonadaptive")
      ->check(CLI::IsMember({"adaptive", "nonadaptive"}));
  run->add_option("--trials", trials, "trial count")
      ->check(CLI::PositiveNumber);
  run->add_option("--alpha-override", alpha_override, "fixed inner iterations");
  run->add_flag("--no-early-stop", no_early_stop, "finish walks after target");
  run->add_option("--oracle", oracle, "exact|knapsack|heuristic|brute");

  // opt
  auto* opt = app.add_subcommand("opt", "exact optimal policies (small instances)");
  std::string opt_instance;
  opt->add_option("--instance", opt_instance, "instance file")->required();

  // orienteer
  auto* orient = app.add_subcommand("orienteer", "single orienteering solve");
  std::string or_instance, budget = "1", or_oracle = "exact";
  orient->add_option("--instance", or_instance, "instance file")->required();
  orient->add_option("--budget", budget, "length budget (rational)");
  orient->add_option("--oracle", or_oracle, "exact|knapsack|heuristic|brute");

  // gaplp
  auto* gaplp = app.add_subcommand("gaplp", "online-bidding LP");
  int lp_n = 2, lp_sweep = 0;
  gaplp->add_option("--n", lp_n, "threshold count");
  gaplp->add_option("--sweep", lp_sweep, "solve n = 1..sweep");

  // check
  auto* check = app.add_subcommand("check", "invariant suites");
  std::string suite = "all";
  long check_cases = 200, check_trials = 100;
  check->add_option("--suite", suite, "capped-sum|minimax|harmonic|lemma1|all")
      ->check(CLI::IsMember({"capped-sum", "minimax", "harmonic", "lemma1", "all"}));
  check->add_option("--cases", check_cases, "case count")->check(CLI::PositiveNumber);
  check->add_option("--trials", check_trials, "trials per case")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(g, family, l, h, t, m, n, k, geometry);
    if (run->parsed())
      return cmd_run(g, run_instance, policy, trials, alpha_override,
                     no_early_stop, oracle);
    if (opt->parsed()) return cmd_opt(g, opt_instance);
    if (orient->parsed()) return cmd_orienteer(g, or_instance, budget, or_oracle);
    if (gaplp->parsed()) return cmd_gaplp(g, lp_n, lp_sweep);
    if (check->parsed()) return cmd_check(g, suite, check_cases, check_trials);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
