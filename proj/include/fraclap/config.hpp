#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fraclap/expr.hpp"
#include "fraclap/geometry.hpp"
#include "fraclap/modulus.hpp"
#include "fraclap/quad_budget.hpp"

namespace fraclap {

// A single-document JSON run configuration, schema-checked before any
// computation (unknown keys are rejected).  CLI flags may override the
// top-level scalar keys (command, n, s, seed, output).
struct RunConfig {
  std::string command;
  int n = 2;
  double s = 0.5;
  std::uint64_t seed = 0;
  QuadBudget budget;
  std::optional<Point> ball_center;
  double ball_radius = 1.0;
  std::map<std::string, FieldSpec> fields;
  std::vector<Point> probes;
  std::vector<std::pair<Point, Point>> pairs;
  std::optional<ModulusSpec> modulus;
  std::vector<double> radii{1.0, 0.5, 0.25, 0.125};
  std::vector<int> alpha_order{1, 0};
  int depth = 5;
  double rho = 0.5;
  double ratio_cap = 1e3;
  int field_count = 4;
  int probe_count = 8;
  std::string out_format = "json";
  std::string out_path;

  static RunConfig from_json_text(const std::string& text);
  static RunConfig from_file(const std::string& path);
};

// Executes the command; writes artifacts atomically; prints a one-line
// summary.  Returns the process exit status: 0 pass, 2 verification failure
// (1 for usage/config errors is produced by the caller).
int run_command(const RunConfig& cfg);

}  // namespace fraclap
