#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "fraclap/config.hpp"
#include "fraclap/report_io.hpp"

using namespace fraclap;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config: schema validation rejects unknown keys and bad values") {
  CHECK_THROWS_AS(RunConfig::from_json_text("{\"commandd\": \"eval\"}"), error);
  CHECK_THROWS_AS(RunConfig::from_json_text("{\"n\": 4}"), error);
  CHECK_THROWS_AS(RunConfig::from_json_text("{\"budget\": {\"nodes\": 3}}"), error);
  CHECK_THROWS_AS(RunConfig::from_json_text("{\"output\": {\"format\": \"xml\"}}"), error);
  CHECK_THROWS_AS(RunConfig::from_json_text("not json"), error);
  CHECK_THROWS_AS(
      RunConfig::from_json_text("{\"fields\": {\"f\": {\"exprs\": \"1\"}}}"), error);

  RunConfig cfg = RunConfig::from_json_text(
      "{\"command\": \"eval\", \"n\": 2, \"s\": 0.3, \"seed\": 7,"
      " \"budget\": {\"radial_nodes\": 8},"
      " \"fields\": {\"f\": {\"expr\": \"cos(x1)\", \"decay_M\": 1.0, \"holder_alpha\": 2}},"
      " \"probes\": [[0.1, 0.2]]}");
  CHECK(cfg.command == "eval");
  CHECK(cfg.s == 0.3);
  CHECK(cfg.seed == 7);
  CHECK(cfg.budget.radial_nodes == 8);
  CHECK(cfg.probes.size() == 1);
}

TEST_CASE("report round trip: json re-read equals the in-memory report") {
  VerificationReport r;
  r.passed = true;
  r.notes = "example";
  r.fitted_exponent = 1.25;
  r.probes.push_back({"p0", 0.125, 1.5e-3, 2.75e-3, 0.5454545454545454, "note a"});
  r.probes.push_back({"p1", 0.0625, 7.7e-4, 1.41e-3, 0.54609929078014185, ""});
  std::string text = report_to_json(r);
  VerificationReport rr = report_from_json(text);
  CHECK(rr.passed == r.passed);
  CHECK(rr.notes == r.notes);
  REQUIRE(rr.fitted_exponent.has_value());
  CHECK(*rr.fitted_exponent == *r.fitted_exponent);
  REQUIRE(rr.probes.size() == r.probes.size());
  for (std::size_t i = 0; i < r.probes.size(); ++i) {
    CHECK(rr.probes[i].id == r.probes[i].id);
    CHECK(rr.probes[i].scale == r.probes[i].scale);
    CHECK(rr.probes[i].lhs == r.probes[i].lhs);
    CHECK(rr.probes[i].rhs == r.probes[i].rhs);
    CHECK(rr.probes[i].ratio == r.probes[i].ratio);
    CHECK(rr.probes[i].note == r.probes[i].note);
  }
}

TEST_CASE("CSV artifact: exact header and 17-digit floats") {
  VerificationReport r;
  r.probes.push_back({"p0", 0.1, 1.0 / 3.0, 2.0 / 3.0, 0.5, "x"});
  std::string csv = report_to_csv(r);
  CHECK(csv.rfind("probe_id,scale,lhs,rhs,ratio,note\n", 0) == 0);
  CHECK(csv.find("0.33333333333333331") != std::string::npos);
  // LF endings only
  CHECK(csv.find('\r') == std::string::npos);
}

TEST_CASE("empty probe list gives a header-only CSV") {
  VerificationReport r;
  CHECK(report_to_csv(r) == "probe_id,scale,lhs,rhs,ratio,note\n");
}

TEST_CASE("run: eval of a constant field produces near-zero values") {
  RunConfig cfg = RunConfig::from_json_text(
      "{\"command\": \"eval\", \"n\": 2, \"s\": 0.5,"
      " \"fields\": {\"f\": {\"expr\": \"1\", \"decay_M\": 1.0, \"holder_alpha\": 2}},"
      " \"probes\": [[0.0,0.0],[0.2,0.1],[-0.3,0.3]],"
      " \"output\": {\"format\": \"csv\", \"path\": \"cli_eval.csv\"}}");
  CHECK(run_command(cfg) == 0);
  std::string csv = slurp("cli_eval.csv");
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);  // header
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    // value column is the 4th field
    std::istringstream cells(line);
    std::string cell;
    for (int c = 0; c < 4; ++c) std::getline(cells, cell, ',');
    CHECK(std::abs(std::stod(cell)) <= 1e-10);
  }
  CHECK(rows == 3);
  std::remove("cli_eval.csv");
}

TEST_CASE("run: identical config and seed produce byte-identical artifacts") {
  const char* cfg_text =
      "{\"command\": \"verify-riesz\", \"n\": 2, \"s\": 0.25, \"seed\": 11,"
      " \"budget\": {\"radial_nodes\": 8, \"angular_nodes\": 32, \"max_refinements\": 1},"
      " \"fields\": {\"f\": {\"expr\": \"pospart(1 - rnorm^2)^3\","
      "                       \"support_radius\": 1.0, \"holder_alpha\": 2}},"
      " \"pairs\": [[[0.125,0],[0,0]], [[0.0625,0],[0,0]], [[0.03125,0],[0,0]],"
      "             [[0.015625,0],[0,0]], [[0.0078125,0],[0,0]]],"
      " \"output\": {\"format\": \"json\", \"path\": \"cli_det1.json\"}}";
  RunConfig cfg = RunConfig::from_json_text(cfg_text);
  CHECK(run_command(cfg) == 0);
  RunConfig cfg2 = cfg;
  cfg2.out_path = "cli_det2.json";
  CHECK(run_command(cfg2) == 0);
  CHECK(slurp("cli_det1.json") == slurp("cli_det2.json"));

  // doubling radial_nodes must not flip a passing verification to failing
  RunConfig cfg3 = cfg;
  cfg3.budget.radial_nodes *= 2;
  cfg3.out_path = "cli_det3.json";
  CHECK(run_command(cfg3) == 0);
  VerificationReport r3 = report_from_json(slurp("cli_det3.json"));
  CHECK(r3.passed);
  std::remove("cli_det1.json");
  std::remove("cli_det2.json");
  std::remove("cli_det3.json");
}

TEST_CASE("run: constants command emits the four constants") {
  RunConfig cfg = RunConfig::from_json_text(
      "{\"command\": \"constants\", \"n\": 2, \"s\": 0.5,"
      " \"output\": {\"format\": \"json\", \"path\": \"cli_constants.json\"}}");
  CHECK(run_command(cfg) == 0);
  std::string text = slurp("cli_constants.json");
  for (const char* key : {"riesz_a", "poisson_c", "flap_C", "bubble_k"})
    CHECK(text.find(key) != std::string::npos);
  std::remove("cli_constants.json");
}

TEST_CASE("run: verification failure exits with status 2") {
  // an absurdly small ratio cap forces FAIL on an otherwise sound problem
  RunConfig cfg = RunConfig::from_json_text(
      "{\"command\": \"verify-schauder\", \"n\": 2, \"s\": 0.25, \"ratio_cap\": 1e-9,"
      " \"budget\": {\"radial_nodes\": 8, \"angular_nodes\": 32, \"max_refinements\": 0},"
      " \"fields\": {\"f\": {\"expr\": \"1\", \"holder_alpha\": 2}},"
      " \"modulus\": {\"kind\": \"power\", \"C\": 1.0, \"alpha\": 0.5},"
      " \"pairs\": [[[0.125,0],[0,0]], [[0.0625,0],[0,0]], [[0.03125,0],[0,0]],"
      "             [[0.015625,0],[0,0]]]}");
  CHECK(run_command(cfg) == 2);
}

TEST_CASE("run: unknown command and missing fields are config errors") {
  RunConfig cfg;
  cfg.command = "frobnicate";
  CHECK_THROWS_AS(run_command(cfg), error);
  RunConfig cfg2;
  cfg2.command = "riesz";
  CHECK_THROWS_AS(run_command(cfg2), error);
}
