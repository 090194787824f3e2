#include "process.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <fstream>

using namespace hksym::test;
using nlohmann::json;

namespace {

RunResult hk(const std::string& args) { return run_command("env -u HKSYM_SEED " + cli_path() + " " + args); }

json strip_wall(json j) {
  j.erase("wall_seconds");
  return j;
}

}  // namespace

TEST_CASE("verify exit codes") {
  CHECK(hk("verify --model 1,1 --seed 42").exit_code == 0);
  CHECK(hk("verify --model 2,2 --seed 7 --samples 25").exit_code == 0);
  CHECK(hk("verify --model 1,1 --lambda 1.0").exit_code == 2);
  CHECK(hk("verify --model 1,1 --lambda 0").exit_code == 2);
  CHECK(hk("verify --model 0,1").exit_code == 2);
  CHECK(hk("verify --tol-exact -1").exit_code == 2);
  CHECK(hk("verify --samples -3").exit_code == 2);
  CHECK(hk("verify --format xml").exit_code == 2);
  CHECK(hk("verify --suite nope").exit_code == 2);
  CHECK(hk("verify --no-such-flag").exit_code == 2);
  CHECK(hk("").exit_code == 2);
  // a tolerance nothing can meet makes checks fail rather than the config
  CHECK(hk("verify --model 1,1 --suite operators --tol-fd 1e-30").exit_code == 1);
}

TEST_CASE("verify json report") {
  const RunResult r = hk("verify --model 2,1 --suite spectrum --suite structure --format json --seed 5");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["pass"] == true);
  CHECK(j["seed"] == 5);
  CHECK(j["checks"].is_array());
  CHECK(j["checks_failed"] == 0);
  for (const auto& c : j["checks"]) {
    CHECK(c.contains("anchor"));
    CHECK(c["pass"] == true);
    CHECK(c["model"] == "su(2,1)");
  }
  const RunResult again = hk("verify --model 2,1 --suite spectrum --suite structure --format json --seed 5 --threads 2");
  CHECK(strip_wall(json::parse(again.out)) == strip_wall(j));
}

TEST_CASE("HKSYM_SEED overrides --seed") {
  const std::string base = cli_path() + " verify --model 1,1 --suite structure --format json";
  const json a = json::parse(run_command("HKSYM_SEED=99 " + base + " --seed 1").out);
  CHECK(a["seed"] == 99);
  CHECK(run_command("HKSYM_SEED=abc " + base).exit_code == 2);
}

TEST_CASE("csv and --out") {
  const std::string path = "hksym_cli_test_out.csv";
  REQUIRE(hk("verify --model 1,1 --suite structure --format csv --out " + path).exit_code == 0);
  std::ifstream f(path);
  std::string header;
  std::getline(f, header);
  CHECK(header == "suite,model,id,anchor,max_residual,tolerance,pass,samples");
  std::remove(path.c_str());
  CHECK(hk("verify --model 1,1 --suite structure --out /nonexistent/dir/x").exit_code == 2);
}

TEST_CASE("spectrum command") {
  RunResult r = hk("spectrum --model 2,2 --coeffs 1.0,0.5 --format json");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  bool found = false;
  for (const auto& row : j["rows"])
    found = found || (std::abs(row["nu1"].get<double>() - 2.25) < 1e-12 && std::abs(row["nu2"].get<double>() - 0.25) < 1e-12);
  CHECK(found);
  r = hk("spectrum --model 2,2 --coeffs 0,0 --format json");
  j = json::parse(r.out);
  REQUIRE(j["rows"].size() == 1);
  CHECK(j["rows"][0]["nu1"].get<double>() == 0.0);
  r = hk("spectrum --coeffs 0.5 --format json");
  j = json::parse(r.out);
  REQUIRE(j["rows"].size() == 1);
  CHECK(std::abs(j["rows"][0]["nu1"].get<double>() - 1.0) < 1e-12);
  CHECK(hk("spectrum --model 2,2 --coeffs 0.3,0.1 --rotate").exit_code == 0);
  CHECK(hk("spectrum --coeffs 1,2").exit_code == 2);
  CHECK(hk("spectrum --coeffs x").exit_code == 2);
  CHECK(hk("spectrum").exit_code == 2);
}

TEST_CASE("sl2 commands") {
  RunResult r = hk("sl2 critical --structure J1 --s-grid 0:pi/2:16 --format json");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  int base_rows = 0;
  for (const auto& row : j["rows"])
    if (row["family"] == "base_sphere") {
      ++base_rows;
      CHECK(std::abs(row["f"].get<double>() - std::cos(4 * row["s"].get<double>())) < 1e-10);
    }
  CHECK(base_rows == 16);

  r = hk("sl2 pushforward --lambda 0.5 --r-grid -2:2:41 --format json");
  REQUIRE(r.exit_code == 0);
  j = json::parse(r.out);
  CHECK(j["rows"].size() == 41);
  for (const auto& row : j["rows"])
    CHECK(std::abs(row["f"].get<double>() - row["f_closed"].get<double>()) <=
          1e-9 * std::max(1.0, std::abs(row["f_closed"].get<double>())));

  CHECK(hk("sl2 pushforward --lambda 1.0").exit_code == 2);
  CHECK(hk("sl2 pushforward --lambda 2").exit_code == 2);
  CHECK(hk("sl2 critical --model 2,1").exit_code == 2);
  CHECK(hk("sl2 critical --structure J2").exit_code == 2);
  CHECK(hk("sl2 critical --s-grid 0:1").exit_code == 2);
  CHECK(hk("sl2").exit_code == 2);

  const std::string in = "hksym_cli_test_in.json";
  {
    std::ofstream f(in);
    f << R"([{"A": 1, "B": 2, "C": 0}, {"A": 0, "B": 1, "C": 1}, {"matrix": [[[0, 0.5], 0], [0, [0, -0.5]]]}])";
  }
  r = hk("sl2 classify --input " + in + " --format json");
  REQUIRE(r.exit_code == 0);
  j = json::parse(r.out);
  REQUIRE(j["rows"].size() == 3);
  CHECK(j["rows"][0]["closed"] == false);
  CHECK(j["rows"][1]["class"] == "closed_f_minus1");
  CHECK(j["rows"][2]["class"] == "O0_plus");
  {
    std::ofstream f(in);
    f << R"({"A": 3, "B": 0, "C": 0})";
  }
  CHECK(hk("sl2 classify --input " + in).exit_code == 2);
  {
    std::ofstream f(in);
    f << "{not json";
  }
  CHECK(hk("sl2 classify --input " + in).exit_code == 2);
  std::remove(in.c_str());
  CHECK(hk("sl2 classify --input /nonexistent.json").exit_code == 2);
}
