#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli/commands.hpp"

namespace fs = std::filesystem;
using rictk::cli::run;

namespace {

struct Run {
  int code = 0;
  std::string out, err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("rictk_cli_test_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("soliton command writes CSV and report") {
  const fs::path dir = scratch("soliton");
  const Run r = invoke({"soliton", "--k", "1", "--beta", "0", "--grid", "-2:2:1", "--out", dir.string()});
  CHECK(r.code == 0);
  const std::string csv = slurp(dir / "soliton.csv");
  CHECK(csv.rfind("x,u", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(csv.find("\n0,-2") != std::string::npos);
  const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(report["command"] == "soliton");
  CHECK(report["pass"] == true);
  for (const auto& c : report["checks"]) CHECK(c["value"].get<double>() <= c["tol"].get<double>());
}

TEST_CASE("hermite command reports the polynomial") {
  const fs::path dir = scratch("hermite");
  CHECK(invoke({"hermite", "--n", "2", "--grid", "-1:1:0.5", "--out", dir.string()}).code == 0);
  const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(report["results"]["polynomial"] == "4x^2-2");
}

TEST_CASE("validation errors exit with code 2") {
  const fs::path dir = scratch("bad");
  CHECK(invoke({"soliton", "--k", "1,2", "--beta", "0,0", "--out", dir.string()}).code == 2);
  CHECK(invoke({"soliton", "--k", "1", "--beta", "0", "--grid", "2:1:0.1", "--out", dir.string()}).code == 2);
  CHECK(invoke({"finite-gap", "--lambdas", "0,1,2", "--out", dir.string()}).code == 2);
  CHECK(invoke({"nonsense"}).code == 2);
  const Run r = invoke({"hermite", "--n", "-1", "--out", dir.string()});
  CHECK(r.code == 2);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("config files supply flags and the command line overrides them") {
  const fs::path dir = scratch("config");
  fs::create_directories(dir);
  const fs::path cfg = dir / "cfg.json";
  std::ofstream(cfg) << R"({"command": "hermite", "n": 5, "grid": "-1:1:0.5"})";
  CHECK(invoke({"--config", cfg.string(), "--n", "3", "--out", dir.string()}).code == 0);
  const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(report["results"]["polynomial"] == "8x^3-12x");

  const auto tokens = rictk::cli::config_tokens(R"({"command": "soliton", "k": [2, 1], "deterministic": true})");
  CHECK(tokens.front() == "soliton");
  CHECK(std::find(tokens.begin(), tokens.end(), "--deterministic") != tokens.end());
  CHECK(std::find(tokens.begin(), tokens.end(), "--k=2,1") != tokens.end());
}

TEST_CASE("deterministic finite-gap output is byte-identical") {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  const std::vector<std::string> common = {"finite-gap", "--grid", "0:5:0.05", "--deterministic", "--out"};
  auto args = common;
  args.push_back(a.string());
  CHECK(invoke(args).code == 0);
  args.back() = b.string();
  CHECK(invoke(args).code == 0);
  CHECK(slurp(a / "finite-gap.csv") == slurp(b / "finite-gap.csv"));
  CHECK_FALSE(slurp(a / "finite-gap.csv").empty());
}

TEST_CASE("failing checks exit with code 3 after writing files") {
  const fs::path dir = scratch("kp");
  const Run r = invoke({"kp", "--k", "2,1", "--beta", "0,0", "--equation", "kp", "--per-axis", "3", "--out", dir.string()});
  CHECK(r.code == 3);
  CHECK(fs::exists(dir / "report.json"));
  const Run kdv = invoke({"kp", "--k", "2,1", "--beta", "0,0", "--equation", "kdv", "--per-axis", "3", "--out", dir.string()});
  CHECK(kdv.code == 0);
}

TEST_CASE("verify suites pass") {
  const fs::path dir = scratch("verify");
  for (const char* suite : {"riccati", "schwarz", "hermite", "series"}) {
    INFO(suite);
    CHECK(invoke({"verify", "--suite", suite, "--out", dir.string()}).code == 0);
  }
}
