#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "renyibet/cli.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = renyibet::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(RENYIBET_SOURCE_DIR) + "/tests/data/" + name; }

}  // namespace

TEST_CASE("div from a spec file") {
  const auto r = invoke({"div", "--spec", data("div.json")});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["divergence"].get<double>() == doctest::Approx(0.069336464195).epsilon(1e-11));
  CHECK(j["case"] == "I");
  CHECK(j["pivot"] == 0);
}

TEST_CASE("div from flags, in bits") {
  const auto r = invoke({"--bits", "div", "--alphas", "2,-1", "--pmfs", data("pmfs.json")});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["divergence"].get<double>() == doctest::Approx(0.321928094887).epsilon(1e-11));
}

TEST_CASE("conditional divergence") {
  const auto r = invoke({"cond-div", "--spec", data("cond_div.json")});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["divergence"].get<double>() == doctest::Approx(0.15834718382).epsilon(1e-10));
}

TEST_CASE("sweep emits csv") {
  const auto r = invoke({"sweep", "--spec", data("sweep.json")});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("lambda,divergence,kl_limit,tropical_limit\n", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 5);
}

TEST_CASE("game commands") {
  auto r = invoke({"ice", "--spec", data("game.json")});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["ice"].get<double>() == doctest::Approx(1.071796766744).epsilon(1e-11));
  r = invoke({"optimize", "--spec", data("game.json")});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["bets"][0]["mass"][0].get<double>() == doctest::Approx(0.633974596216).epsilon(1e-11));
  r = invoke({"decompose", "--spec", data("game_joint.json")});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["bound_holds"] == true);
  r = invoke({"--format", "csv", "decompose", "--spec", data("game.json")});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("lottery,", 0) == 0);
  r = invoke({"side-info", "--spec", data("game_joint.json")});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["gain"].get<double>() == doctest::Approx(0.04494737426).epsilon(1e-9));
}

TEST_CASE("gpt commands") {
  auto r = invoke({"gpt-bet", "--spec", data("qubit.json")});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["optimal_log_ice"].get<double>() == doctest::Approx(0.15834718382).epsilon(1e-10));
  r = invoke({"sd", "--spec", data("qubit.json")});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["success"].get<double>() == doctest::Approx(0.75));
  r = invoke({"monotone", "--spec", data("qubit.json")});
  CHECK(r.code == 0);
}

TEST_CASE("oracle cross checks") {
  CHECK(invoke({"oracle", "--check", "optimize", "--spec", data("game_joint.json")}).code == 0);
  CHECK(invoke({"--seed", "3", "oracle", "--check", "mc", "--spec", data("game_joint.json")}).code == 0);
}

TEST_CASE("dpi check holds") {
  const auto r = invoke({"dpi-check", "--spec", data("dpi.json")});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["holds"] == true);
}

TEST_CASE("exit codes") {
  CHECK(invoke({"ice", "--spec", data("bad_risk.json")}).code == renyibet::cli::kSingularity);
  CHECK(invoke({"ice", "--spec", data("bad_field.json")}).code == renyibet::cli::kValidation);
  CHECK(invoke({"ice", "--spec", data("missing.json")}).code == renyibet::cli::kValidation);
  CHECK(invoke({"no-such-command"}).code == renyibet::cli::kValidation);
  CHECK(invoke({"--format", "csv", "ice", "--spec", data("game.json")}).code == renyibet::cli::kValidation);
  const auto r = invoke({"ice", "--spec", data("bad_field.json")});
  CHECK(json::parse(r.err)["error"] == "validation");
}
