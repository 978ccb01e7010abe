// Copyright 2026 The pseudoproj developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <string>

namespace {

using Json = nlohmann::json;

const char* cli_path() { return std::getenv("PSEUDOPROJ_CLI"); }

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(cli_path()) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buffer{};
  std::string output;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buffer.data(), int(buffer.size()), pipe)) output += buffer.data();
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), output};
}

}  // namespace

TEST_CASE("cli end to end" * doctest::skip(cli_path() == nullptr)) {
  SUBCASE("lhv bound of the named three-party polynomial") {
    const RunResult r = run_cli("lhv --expr mermin --n 3");
    CHECK(r.exit_code == 0);
    const Json j = Json::parse(r.output);
    CHECK(j.at("max").get<double>() == 2.0);
    CHECK(j.at("max_abs").get<double>() == 2.0);
  }

  SUBCASE("optimized witness evaluation") {
    const RunResult r = run_cli(
        "eval --witness E3_1 --alpha-max --state ghz3 --p 1 --optimize --restarts 12 --seed 0");
    CHECK(r.exit_code == 0);
    const Json j = Json::parse(r.output);
    CHECK(j.at("value").get<double>() == doctest::Approx(-3.0).epsilon(1e-5));
    CHECK(j.at("violated").get<bool>());
  }

  SUBCASE("threshold scan is deterministic and hits the known value") {
    const std::string args =
        "scan --inequality svetlichny --state ghz3 --seed 0 --restarts 12";
    const RunResult first = run_cli(args);
    CHECK(first.exit_code == 0);
    const Json j = Json::parse(first.output);
    CHECK(j.at(0).at("p_star").get<double>() == doctest::Approx(0.7071).epsilon(2e-3));
    const RunResult second = run_cli(args);
    CHECK(first.output == second.output);  // byte-identical for a fixed seed
  }

  SUBCASE("witness operator dump is Hermitian") {
    const RunResult r = run_cli("witness --witness E3_2 --alpha-max");
    CHECK(r.exit_code == 0);
    const Json j = Json::parse(r.output);
    const auto& m = j.at("matrix");
    REQUIRE(m.size() == 8);
    for (std::size_t i = 0; i < 8; ++i) {
      for (std::size_t k = 0; k < 8; ++k) {
        CHECK(m.at(i).at(k).at(0).get<double>() ==
              doctest::Approx(m.at(k).at(i).at(0).get<double>()).epsilon(1e-12));
        CHECK(m.at(i).at(k).at(1).get<double>() ==
              doctest::Approx(-m.at(k).at(i).at(1).get<double>()).epsilon(1e-12));
      }
    }
  }

  SUBCASE("expansion of a matrix file") {
    const std::string path = "/tmp/pseudoproj_test_matrix.json";
    std::ofstream(path) << "[[[1,0],[0,0]],[[0,0],[-1,0]]]";
    const RunResult r = run_cli("expand --in " + path + " --theta 1.2");
    CHECK(r.exit_code == 0);
    const Json j = Json::parse(r.output);
    CHECK(j.at("reconstruction_error").get<double>() < 1e-10);
    for (const auto& term : j.at("terms")) CHECK(term.at("weight").get<double>() >= 0.0);
  }

  SUBCASE("pps scheme report") {
    const std::string path = "/tmp/pseudoproj_test_obs.json";
    std::ofstream(path) << "[[[1,0,0],[0,0,1]],[[0,0,1]]]";
    const RunResult r = run_cli("pps --obs " + path + " --state ghz3 --p 0.5");
    CHECK(r.exit_code == 2);  // three subsystems required for a ghz3 state

    const std::string path3 = "/tmp/pseudoproj_test_obs3.json";
    std::ofstream(path3) << "[[[1,0,0],[0,0,1]],[[0,0,1]],[[0,0,1]]]";
    const RunResult ok = run_cli("pps --obs " + path3 + " --state ghz3 --p 0.5");
    CHECK(ok.exit_code == 0);
    const Json j = Json::parse(ok.output);
    double sum = 0.0;
    for (const auto& entry : j.at("pps").at("entries")) sum += entry.at("value").get<double>();
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }

  SUBCASE("states load from JSON matrix files") {
    const std::string path = "/tmp/pseudoproj_test_state.json";
    // the maximally mixed two-qubit state
    std::ofstream(path) << "[[[0.25,0],[0,0],[0,0],[0,0]],[[0,0],[0.25,0],[0,0],[0,0]],"
                           "[[0,0],[0,0],[0.25,0],[0,0]],[[0,0],[0,0],[0,0],[0.25,0]]]";
    const std::string obs = "/tmp/pseudoproj_test_state_obs.json";
    std::ofstream(obs) << "[[[1,0,0],[0,0,1]],[[0,1,0]]]";
    const RunResult r = run_cli("pps --obs " + obs + " --state file:" + path);
    CHECK(r.exit_code == 0);
    const Json j = Json::parse(r.output);
    CHECK(j.at("classical").get<bool>());
    double sum = 0.0;
    for (const auto& entry : j.at("pps").at("entries")) sum += entry.at("value").get<double>();
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }

  SUBCASE("validation failures exit with code 2") {
    CHECK(run_cli("eval --poly nope --state ghz3").exit_code == 2);
    CHECK(run_cli("scan --inequality mermin --state banana").exit_code == 2);
    CHECK(run_cli("eval --state ghz3").exit_code == 2);  // neither witness nor poly
  }
}
