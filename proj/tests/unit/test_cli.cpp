#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hill/cli.hpp"

using namespace hill;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "hillproj");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "hillproj_cli" / name;
  fs::remove_all(dir);
  fs::create_directories(dir.parent_path());
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("configuration errors exit with 2") {
  const auto dir = fresh("errors");
  fs::create_directories(dir);
  const auto empty = dir / "empty.json";
  std::ofstream(empty).close();
  CHECK(run_cli({"--config", empty.string(), "spectrum", "--out", dir.string()}).code == 2);

  const auto braces = dir / "braces.json";
  std::ofstream(braces) << "{}";
  CHECK(run_cli({"--config", braces.string(), "spectrum"}).code == 2);
  CHECK(run_cli({"--config", (dir / "missing.json").string(), "spectrum"}).code == 2);

  const auto parity = run_cli({"--bc", "per-", "--n-min", "10", "--n-max", "15", "spectrum", "--out", dir.string()});
  CHECK(parity.code == 2);
  CHECK(parity.err.find("parity") != std::string::npos);

  CHECK(run_cli({"--potential", "bessel:1", "spectrum"}).code == 2);
  CHECK(run_cli({"--K", "10", "spectrum"}).code == 2);
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
}

TEST_CASE("explicit flags override the config file") {
  const auto dir = fresh("precedence");
  fs::create_directories(dir);
  const auto cfg = dir / "run.json";
  std::ofstream(cfg) << R"({"potential": "mathieu:2", "n_min": 6, "n_max": 10, "bc": "dir"})";
  const auto res = run_cli({"--config", cfg.string(), "--n-max", "8", "spectrum", "--out", (dir / "o").string()});
  REQUIRE(res.code == 0);
  const auto j = json::parse(slurp(dir / "o" / "spectrum.json"));
  CHECK(j["config"]["n_max"] == 8);
  CHECK(j["config"]["n_min"] == 6);
  CHECK(j["config"]["bc"] == "dir");
  CHECK(j["config"]["potential"]["coupling"] == 2.0);
}

TEST_CASE("verify passes, is deterministic, and catches an injected fault") {
  const auto a = fresh("verify_a");
  const auto b = fresh("verify_b");
  REQUIRE(run_cli({"--seed", "99", "verify", "--out", a.string()}).code == 0);
  REQUIRE(run_cli({"--seed", "99", "verify", "--out", b.string()}).code == 0);
  CHECK(slurp(a / "verify.csv") == slurp(b / "verify.csv"));
  CHECK(slurp(a / "verify.json") == slurp(b / "verify.json"));

  const auto bad = fresh("verify_fault");
  const auto res = run_cli({"--inject-fault", "residue", "verify", "--out", bad.string()});
  CHECK(res.code == 1);
  const auto j = json::parse(slurp(bad / "verify.json"));
  bool residue_failed = false;
  for (const auto& check : j["checks"]) {
    if (check["check"] == "residue" && !check["passed"].get<bool>()) residue_failed = true;
  }
  CHECK(residue_failed);
}

TEST_CASE("subcommands write their outputs") {
  const auto dir = fresh("outputs");
  const std::vector<std::string> common{"--n-min", "10", "--n-max", "14", "--out", dir.string()};
  for (const std::string sub : {"spectrum", "decay", "bounds", "lpnorms"}) {
    auto args = common;
    args.insert(args.begin(), sub);
    CHECK_MESSAGE(run_cli(args).code == 0, sub);
  }
  for (const char* f : {"spectrum_eigenvalues.csv", "spectrum_counts.csv", "spectrum.json", "decay.csv", "decay.json",
                        "bounds.csv", "bounds.json", "lpnorms.csv", "lpnorms.json"}) {
    CHECK_MESSAGE(fs::exists(dir / f), f);
  }
  CHECK(slurp(dir / "decay.csv").find("n,bc,sum_abs_B") != std::string::npos);
  CHECK(run_cli({"decay", "--n-min", "10", "--n-max", "10", "--dump-matrices", "--out", dir.string()}).code == 0);
  CHECK(fs::exists(dir / "B_n10.bin"));
}
