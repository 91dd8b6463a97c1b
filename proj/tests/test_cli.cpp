#include "sktsp/instance.hpp"

#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

fs::path work_dir() {
  auto dir = fs::temp_directory_path() / "sktsp_cli_test";
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(SKTSP_CLI_PATH) + " " + args + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("gen writes a parseable instance") {
  auto out = work_dir() / "e1.json";
  REQUIRE(run_cli("--out " + out.string() + " gen example1 --l 7") == 0);
  auto inst = sktsp::parse_instance(slurp(out));
  CHECK(inst.n == 57);  // 56 items + depot
  CHECK(inst.k == 128);
}

TEST_CASE("gen random is byte-deterministic") {
  auto a = work_dir() / "ra.json";
  auto b = work_dir() / "rb.json";
  REQUIRE(run_cli("--seed 7 --out " + a.string() + " gen random --n 6 --k 12") == 0);
  REQUIRE(run_cli("--seed 7 --out " + b.string() + " gen random --n 6 --k 12") == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK_FALSE(slurp(a).empty());
}

TEST_CASE("gaplp reports the n=2 value") {
  auto out = work_dir() / "lp.csv";
  REQUIRE(run_cli("--out " + out.string() + " gaplp --n 2") == 0);
  CHECK(slurp(out).find("1.333333333") != std::string::npos);
}

TEST_CASE("opt reports exact optima for the gap instance") {
  auto inst = work_dir() / "gap2.json";
  REQUIRE(run_cli("--out " + inst.string() + " gen gap --n 2") == 0);
  auto out = work_dir() / "opt.csv";
  REQUIRE(run_cli("--out " + out.string() + " opt --instance " + inst.string()) == 0);
  std::string rep = slurp(out);
  CHECK(rep.find("opt_adaptive,3/2") != std::string::npos);
  CHECK(rep.find("opt_nonadaptive,2") != std::string::npos);
}

TEST_CASE("run validates its flags") {
  auto inst = work_dir() / "e1b.json";
  REQUIRE(run_cli("--out " + inst.string() + " gen example1 --l 4") == 0);
  CHECK(run_cli("run --instance " + inst.string() + " --trials 0") != 0);
  CHECK(run_cli("run --instance /nonexistent.json") != 0);

  auto out = work_dir() / "run.csv";
  REQUIRE(run_cli("--out " + out.string() + " run --instance " + inst.string() +
                  " --policy adaptive --oracle knapsack --trials 3") == 0);
  std::string rep = slurp(out);
  CHECK(rep.find("mean_exact,28") != std::string::npos);
}

TEST_CASE("oracle and instance kind must match") {
  auto inst = work_dir() / "star.json";
  REQUIRE(run_cli("--seed 3 --out " + inst.string() + " gen random --n 4 --k 4") == 0);
  CHECK(run_cli("run --instance " + inst.string() + " --oracle knapsack --trials 2") != 0);
}

TEST_CASE("orienteer smoke test") {
  auto inst = work_dir() / "star2.json";
  REQUIRE(run_cli("--seed 5 --out " + inst.string() + " gen random --n 4 --k 4") == 0);
  auto out = work_dir() / "or.csv";
  REQUIRE(run_cli("--out " + out.string() + " orienteer --instance " + inst.string() +
                  " --budget 10") == 0);
  CHECK(slurp(out).find("profit,") != std::string::npos);
}

TEST_CASE("check suite exits zero on pass") {
  CHECK(run_cli("check --suite capped-sum --cases 50") == 0);
  CHECK(run_cli("check --suite minimax --cases 25") == 0);
  CHECK(run_cli("check --suite bogus") != 0);
}

TEST_CASE("run reports exact expectation for nonadaptive tours") {
  auto inst = work_dir() / "e1c.json";
  REQUIRE(run_cli("--out " + inst.string() + " gen example1 --l 3") == 0);
  auto out = work_dir() / "na.csv";
  REQUIRE(run_cli("--out " + out.string() + " run --instance " + inst.string() +
                  " --policy nonadaptive --oracle knapsack --trials 3") == 0);
  CHECK(slurp(out).find("expected_length_exact,") != std::string::npos);
}
