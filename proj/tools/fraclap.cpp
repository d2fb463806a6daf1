// Command-line front end: config ingestion, experiment orchestration, and
// plot-ready CSV/JSON artifacts.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "fraclap/config.hpp"
#include "fraclap/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"fraclap: potential-theory toolkit for the fractional Laplacian on balls"};

  std::string config_path;
  std::string command;
  int n = -1;
  double s = -1.0;
  std::int64_t seed = -1;
  std::string out_path;
  std::string out_format;

  app.add_option("config", config_path, "JSON config file (optional when --command is given)");
  app.add_option("--command", command,
                 "constants | eval | riesz | extend | solve | cascade | verify-schauder | "
                 "verify-lemma31 | verify-lemma32 | verify-riesz");
  app.add_option("--n", n, "ambient dimension (2 or 3)");
  app.add_option("--s", s, "fractional order in (0,1)");
  app.add_option("--seed", seed, "seed for quasi-random probe generation");
  app.add_option("--out", out_path, "artifact path");
  app.add_option("--format", out_format, "artifact format: csv | json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    fraclap::RunConfig cfg;
    if (!config_path.empty() && config_path.front() != '-') {
      // allow `fraclap constants --n 2` style invocation: a bare command name
      // in the positional slot
      bool looks_like_command = config_path.find('.') == std::string::npos &&
                                config_path.find('/') == std::string::npos;
      if (looks_like_command && command.empty()) {
        command = config_path;
      } else {
        cfg = fraclap::RunConfig::from_file(config_path);
      }
    }
    // flags override top-level scalar keys only
    if (!command.empty()) cfg.command = command;
    if (n > 0) cfg.n = n;
    if (s > 0.0) cfg.s = s;
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    if (!out_path.empty()) cfg.out_path = out_path;
    if (!out_format.empty()) cfg.out_format = out_format;
    if (cfg.command.empty()) {
      std::fprintf(stderr, "error: no command given (config key 'command' or --command)\n");
      return 1;
    }
    if (cfg.n != 2 && cfg.n != 3) {
      std::fprintf(stderr, "error: n must be 2 or 3\n");
      return 1;
    }
    return fraclap::run_command(cfg);
  } catch (const fraclap::error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
