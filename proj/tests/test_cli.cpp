#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>

#ifndef SUBLAP_CLI_PATH
#define SUBLAP_CLI_PATH "sublap"
#endif
#ifndef SUBLAP_FIXTURE_DIR
#define SUBLAP_FIXTURE_DIR "fixtures"
#endif

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  const std::string command = std::string(SUBLAP_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult result;
  std::array<char, 4096> buffer;
  while (std::size_t got = fread(buffer.data(), 1, buffer.size(), pipe))
    result.output.append(buffer.data(), got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string fixture(const std::string& name) {
  return std::string(SUBLAP_FIXTURE_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("spectral diffusion on the complete graph") {
  const auto result = run_cli("spectral " + fixture("k4.graph") + " --seed 1");
  REQUIRE(result.exit_code == 0);
  const auto report = nlohmann::json::parse(result.output);
  CHECK(report["tool"] == "sublap");
  CHECK(report["command"] == "spectral");
  CHECK(report["instance"]["n"] == 4);
  CHECK(report["results"]["lambda"].get<double>() == doctest::Approx(4.0 / 3.0).epsilon(1e-5));
  CHECK_FALSE(report.contains("timings"));
}

TEST_CASE("spectral on an empty graph reports lambda zero") {
  const auto result = run_cli("spectral " + fixture("empty3.graph"));
  REQUIRE(result.exit_code == 0);
  const auto report = nlohmann::json::parse(result.output);
  CHECK(report["results"]["lambda"].get<double>() == 0.0);
}

TEST_CASE("sdp-sym mode refuses asymmetric instances") {
  // The directed path is asymmetric; the directed cycle is symmetric as a
  // multiset (arcs leaving S match arcs entering S) and must be accepted.
  CHECK(run_cli("spectral " + fixture("dipath3.digraph") + " --mode sdp-sym").exit_code == 2);
  CHECK(run_cli("spectral " + fixture("dicycle4.digraph") + " --mode sdp-sym --seed 1").exit_code ==
        0);
  CHECK(run_cli("spectral " + fixture("dipath3.digraph") + " --mode sdp-gen --seed 1").exit_code ==
        0);
}

TEST_CASE("conductance subcommand") {
  const auto brute = run_cli("conductance " + fixture("c4.graph") + " --brute");
  REQUIRE(brute.exit_code == 0);
  const auto report = nlohmann::json::parse(brute.output);
  CHECK(report["results"]["phi"].get<double>() == doctest::Approx(0.5));

  const auto fixed = run_cli("conductance " + fixture("c4.graph") + " --set 1,2");
  REQUIRE(fixed.exit_code == 0);
  const auto fixed_report = nlohmann::json::parse(fixed.output);
  CHECK(fixed_report["results"]["report"]["phi"].get<double>() == doctest::Approx(0.5));
  CHECK(fixed_report["results"]["report"]["set"] == nlohmann::json({1, 2}));

  CHECK(run_cli("conductance " + fixture("c4.graph")).exit_code == 2);
  CHECK(run_cli("conductance " + fixture("c4.graph") + " --set 9").exit_code == 2);
}

TEST_CASE("certify exit code follows the certificate") {
  const auto result = run_cli("certify " + fixture("k4.graph") + " --seed 2");
  REQUIRE(result.exit_code == 0);
  const auto report = nlohmann::json::parse(result.output);
  CHECK(report["results"]["sandwich_holds"] == true);
  CHECK(report["results"]["phi"].get<double>() == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("certify output is byte-identical across runs") {
  const std::string args = "certify " + fixture("c4.graph") + " --seed 5";
  const auto first = run_cli(args);
  const auto second = run_cli(args);
  REQUIRE(first.exit_code == 0);
  CHECK(first.output == second.output);
}

TEST_CASE("cover subcommand writes the requested file") {
  const std::string out = "/tmp/sublap_cli_cover.txt";
  const auto result =
      run_cli("cover " + fixture("path3.graph") + " --function-index 1 --eps 0.9 --out " + out);
  REQUIRE(result.exit_code == 0);
  const auto report = nlohmann::json::parse(result.output);
  CHECK(report["results"]["size"].get<long>() > 0);
  CHECK(report["results"]["skipped"].get<long>() == 0);
  FILE* file = fopen(out.c_str(), "r");
  REQUIRE(file != nullptr);
  fclose(file);
  std::remove(out.c_str());

  CHECK(run_cli("cover " + fixture("path3.graph") + " --function-index 7").exit_code == 2);
}

TEST_CASE("minnorm subcommand") {
  const auto result = run_cli("minnorm " + fixture("k4.graph"));
  REQUIRE(result.exit_code == 0);
  const auto report = nlohmann::json::parse(result.output);
  CHECK(report["results"]["squared_norm"].get<double>() <= 1e-6);
}

TEST_CASE("usage and io failures exit with code 2") {
  CHECK(run_cli("spectral /nonexistent/file.graph").exit_code == 2);
  CHECK(run_cli("spectral").exit_code == 2);
  CHECK(run_cli("bogus-subcommand x").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("timings appear only when requested") {
  const auto result = run_cli("conductance " + fixture("c4.graph") + " --brute --timings");
  REQUIRE(result.exit_code == 0);
  const auto report = nlohmann::json::parse(result.output);
  CHECK(report.contains("timings"));
}
