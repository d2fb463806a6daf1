#include <cmath>
#include <cstdio>
#include <functional>

#include <json.hpp>

#include "fraclap/ballsolver.hpp"
#include "fraclap/catalog.hpp"
#include "fraclap/config.hpp"
#include "fraclap/constants.hpp"
#include "fraclap/engines.hpp"
#include "fraclap/probes.hpp"
#include "fraclap/report_io.hpp"
#include "fraclap/schauder.hpp"

namespace fraclap {
namespace {

struct ValueRow {
  std::string id;
  Point x;
  double value;
  double est_error;
};

std::string values_to_csv(const std::vector<ValueRow>& rows, int n) {
  std::string out = "probe_id,x1,x2";
  if (n >= 3) out += ",x3";
  out += ",value,est_error\n";
  for (const auto& r : rows) {
    out += r.id;
    for (int i = 0; i < n; ++i) {
      out += ',';
      out += format17(r.x[i]);
    }
    out += ',';
    out += format17(r.value);
    out += ',';
    out += format17(r.est_error);
    out += '\n';
  }
  return out;
}

std::string values_to_json(const std::vector<ValueRow>& rows) {
  nlohmann::json j;
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row;
    row["id"] = r.id;
    row["x"] = r.x.coords();
    row["value"] = r.value;
    row["est_error"] = r.est_error;
    j["rows"].push_back(row);
  }
  return j.dump(2) + "\n";
}

void emit_values(const RunConfig& cfg, const std::vector<ValueRow>& rows) {
  if (cfg.out_path.empty()) return;
  atomic_write(cfg.out_path,
               cfg.out_format == "csv" ? values_to_csv(rows, cfg.n) : values_to_json(rows));
}

void emit_verification(const RunConfig& cfg, const VerificationReport& rep) {
  if (cfg.out_path.empty()) return;
  emit_report(rep, cfg.out_format, cfg.out_path);
}

ScalarField require_field(const RunConfig& cfg, const std::string& name) {
  auto it = cfg.fields.find(name);
  if (it == cfg.fields.end())
    throw_error(error::kind::config, "command '" + cfg.command + "' needs field '" + name + "'");
  return compile_field(it->second);
}

ScalarField field_or_zero(const RunConfig& cfg, const std::string& name) {
  auto it = cfg.fields.find(name);
  if (it == cfg.fields.end()) return ScalarField::constant(cfg.n, 0.0);
  return compile_field(it->second);
}

Ball config_ball(const RunConfig& cfg) {
  return Ball(cfg.ball_center ? *cfg.ball_center : Point::zero(cfg.n), cfg.ball_radius);
}

std::vector<Point> config_probes(const RunConfig& cfg, const Ball& B, double shrink) {
  if (!cfg.probes.empty()) return cfg.probes;
  Ball half(B.center(), shrink * B.radius());
  return halton_ball_points(half, static_cast<std::size_t>(cfg.probe_count), cfg.seed);
}

std::vector<std::pair<Point, Point>> config_pairs(const RunConfig& cfg) {
  if (!cfg.pairs.empty()) return cfg.pairs;
  return dyadic_pairs(cfg.n, 3, 8);
}

// empirical modulus of f from sampled pairs (monotonized), used when the
// config does not provide one analytically
ModulusSpec empirical_modulus(const ScalarField& f, const Ball& B, std::uint64_t seed) {
  std::vector<Point> a = halton_ball_points(B, 10000, seed + 1);
  std::vector<Point> b = halton_ball_points(B, 10000, seed + 77777);
  std::vector<std::pair<double, double>> samples;
  samples.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    samples.emplace_back(dist(a[i], b[i]), std::abs(f(a[i]) - f(b[i])));
  return ModulusSpec::empirical(std::move(samples), 2.0 * B.radius());
}

int summary_line(const std::string& command, std::size_t probes, const std::string& metric,
                 double value, bool passed) {
  std::printf("%s probes=%zu %s=%.6g %s\n", command.c_str(), probes, metric.c_str(), value,
              passed ? "pass" : "FAIL");
  return passed ? 0 : 2;
}

int run_constants(const RunConfig& cfg) {
  Constants k = Constants::make(cfg.n, cfg.s);
  nlohmann::json j;
  j["n"] = k.n;
  j["s"] = cfg.s;
  j["riesz_a"] = k.riesz_a;
  j["poisson_c"] = k.poisson_c;
  j["flap_C"] = k.flap_C;
  j["bubble_k"] = k.bubble_k;
  std::string text = j.dump(2) + "\n";
  if (!cfg.out_path.empty())
    atomic_write(cfg.out_path, text);
  else
    std::fputs(text.c_str(), stdout);
  std::printf("constants n=%d s=%.6g pass\n", cfg.n, cfg.s);
  return 0;
}

int run_eval(const RunConfig& cfg) {
  Constants k = Constants::make(cfg.n, cfg.s);
  ScalarField u = require_field(cfg, "f");
  Ball B = config_ball(cfg);
  std::vector<Point> probes = config_probes(cfg, B, 0.5);
  std::vector<ValueRow> rows;
  double max_err = 0.0;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    EngineResult r = frac_laplacian(u, probes[i], k, cfg.budget);
    rows.push_back({"p" + std::to_string(i), probes[i], r.value, r.est_error});
    max_err = std::max(max_err, r.est_error);
  }
  emit_values(cfg, rows);
  return summary_line("eval", probes.size(), "max_est_error", max_err, true);
}

int run_riesz(const RunConfig& cfg) {
  Constants k = Constants::make(cfg.n, cfg.s);
  ScalarField f = require_field(cfg, "f");
  Ball B = config_ball(cfg);
  std::vector<Point> probes = config_probes(cfg, B, 0.5);
  std::vector<ValueRow> rows;
  double max_err = 0.0;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    EngineResult r = riesz_potential(f, probes[i], k, cfg.budget);
    rows.push_back({"p" + std::to_string(i), probes[i], r.value, r.est_error});
    max_err = std::max(max_err, r.est_error);
  }
  emit_values(cfg, rows);
  return summary_line("riesz", probes.size(), "max_est_error", max_err, true);
}

int run_extend(const RunConfig& cfg) {
  Constants k = Constants::make(cfg.n, cfg.s);
  ScalarField g = require_field(cfg, "g");
  Ball B = config_ball(cfg);
  SolutionField u = poisson_extend(field_outside(g, B), B, k, cfg.budget);
  std::vector<Point> probes = config_probes(cfg, B, 0.5);
  std::vector<ValueRow> rows;
  double max_abs = 0.0;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    double v = u.eval(probes[i]);
    rows.push_back({"p" + std::to_string(i), probes[i], v, 0.0});
    max_abs = std::max(max_abs, std::abs(v));
  }
  emit_values(cfg, rows);
  return summary_line("extend", probes.size(), "max_abs", max_abs, true);
}

int run_solve(const RunConfig& cfg) {
  Constants k = Constants::make(cfg.n, cfg.s);
  Ball B = config_ball(cfg);
  DirichletProblem p{B, require_field(cfg, "f"), field_or_zero(cfg, "g"), k.s};
  SolutionField u = solve_dirichlet(p, k, cfg.budget);
  std::vector<Point> probes = config_probes(cfg, B, 0.5);
  std::vector<ValueRow> rows;
  double max_abs = 0.0;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    double v = u.eval(probes[i]);
    rows.push_back({"p" + std::to_string(i), probes[i], v, 0.0});
    max_abs = std::max(max_abs, std::abs(v));
  }
  emit_values(cfg, rows);
  return summary_line("solve", probes.size(), "max_abs", max_abs, true);
}

int run_cascade(const RunConfig& cfg) {
  Constants k = Constants::make(cfg.n, cfg.s);
  Ball B = config_ball(cfg);
  if (B.center().norm() != 0.0)
    throw_error(error::kind::config, "cascade: the dyadic balls are centered at the origin");
  ScalarField f = require_field(cfg, "f");
  DirichletProblem p{B, f, field_or_zero(cfg, "g"), k.s};
  SolutionField u = solve_dirichlet(p, k, cfg.budget);
  CascadeConfig cc;
  cc.rho = cfg.rho;
  cc.depth = cfg.depth;
  cc.order = k.s;
  cc.budget = cfg.budget;
  CascadeResult res = dyadic_cascade(u, f, cc, k);

  std::optional<ModulusSpec> m = cfg.modulus;
  VerificationReport rep;
  std::vector<std::pair<double, double>> fitsamp;
  for (const auto& lvl : res.levels) {
    ProbeRow row;
    row.id = "level" + std::to_string(lvl.k);
    row.scale = std::pow(cfg.rho, lvl.k);
    row.lhs = lvl.sup_dev;
    double omega = m ? m->eval(std::min(row.scale, m->domain_cap())) : 0.0;
    row.rhs = std::pow(row.scale, 2.0 * cfg.s) * omega;
    row.ratio = row.rhs > 0.0 ? row.lhs / row.rhs : 0.0;
    row.note = lvl.grad_dev ? "grad_dev " + format17(*lvl.grad_dev) : "";
    rep.probes.push_back(row);
    if (lvl.sup_dev > 0.0) fitsamp.emplace_back(row.scale, lvl.sup_dev);
  }
  bool ok = true;
  if (fitsamp.size() >= 4) {
    double slope = fit_exponent(fitsamp);  // vs radius rho^k
    rep.fitted_exponent = slope;
    ok = slope >= 2.0 * cfg.s - 0.2;  // decay at least rho^{2ks} up to slack
  }
  for (std::size_t j = 0; j < res.h_residuals.size(); ++j) {
    ProbeRow row;
    row.id = "h" + std::to_string(j + 1);
    row.scale = res.h_scales[j];
    row.lhs = res.h_residuals[j];
    row.rhs = 5e-3 * res.h_scales[j];
    row.ratio = row.rhs > 0.0 ? row.lhs / row.rhs : 0.0;
    row.note = "s-harmonicity residual";
    rep.probes.push_back(row);
    if (row.lhs > row.rhs + 1e-12) ok = false;
  }
  rep.passed = ok;
  rep.notes = "dyadic cascade rho=" + format17(cfg.rho) + " depth=" + std::to_string(cfg.depth);
  emit_verification(cfg, rep);
  return summary_line("cascade", rep.probes.size(), "fitted_exponent",
                      rep.fitted_exponent.value_or(0.0), rep.passed);
}

int run_verify_schauder(const RunConfig& cfg) {
  Constants k = Constants::make(cfg.n, cfg.s);
  Ball B = config_ball(cfg);
  ScalarField f = require_field(cfg, "f");
  DirichletProblem p{B, f, field_or_zero(cfg, "g"), k.s};
  ModulusSpec m = cfg.modulus ? *cfg.modulus : empirical_modulus(f, B, cfg.seed);
  CascadeConfig cc;
  cc.order = k.s;
  cc.budget = cfg.budget;
  VerificationReport rep = verify_schauder(p, m, config_pairs(cfg), cc, k, cfg.ratio_cap);
  emit_verification(cfg, rep);
  double metric = 0.0;
  for (const auto& row : rep.probes) metric = std::max(metric, row.ratio);
  return summary_line("verify-schauder", rep.probes.size(), "max_ratio", metric, rep.passed);
}

int run_verify_lemma31(const RunConfig& cfg) {
  Constants k = Constants::make(cfg.n, cfg.s);
  auto family = random_angular_family(cfg.n, cfg.field_count, cfg.seed);
  VerificationReport rep =
      verify_lemma_derivative_estimate(family, cfg.radii, cfg.alpha_order, k, cfg.budget);
  emit_verification(cfg, rep);
  return summary_line("verify-lemma31", rep.probes.size(), "fitted_exponent",
                      rep.fitted_exponent.value_or(0.0), rep.passed);
}

int run_verify_lemma32(const RunConfig& cfg) {
  Constants k = Constants::make(cfg.n, cfg.s);
  std::vector<ScalarField> family;
  if (cfg.fields.count("f"))
    family.push_back(require_field(cfg, "f"));
  else
    family = default_rhs_family(cfg.n);
  VerificationReport rep = verify_lemma_supnorm_estimate(family, cfg.radii, k, cfg.budget);
  emit_verification(cfg, rep);
  return summary_line("verify-lemma32", rep.probes.size(), "fitted_exponent",
                      rep.fitted_exponent.value_or(0.0), rep.passed);
}

int run_verify_riesz(const RunConfig& cfg) {
  Constants k = Constants::make(cfg.n, cfg.s);
  ScalarField f = require_field(cfg, "f");
  VerificationReport rep = verify_riesz_holder(f, k.s, config_pairs(cfg), k, cfg.budget);
  emit_verification(cfg, rep);
  return summary_line("verify-riesz", rep.probes.size(), "fitted_exponent",
                      rep.fitted_exponent.value_or(0.0), rep.passed);
}

}  // namespace

int run_command(const RunConfig& cfg) {
  if (cfg.command == "constants") return run_constants(cfg);
  if (cfg.command == "eval") return run_eval(cfg);
  if (cfg.command == "riesz") return run_riesz(cfg);
  if (cfg.command == "extend") return run_extend(cfg);
  if (cfg.command == "solve") return run_solve(cfg);
  if (cfg.command == "cascade") return run_cascade(cfg);
  if (cfg.command == "verify-schauder") return run_verify_schauder(cfg);
  if (cfg.command == "verify-lemma31") return run_verify_lemma31(cfg);
  if (cfg.command == "verify-lemma32") return run_verify_lemma32(cfg);
  if (cfg.command == "verify-riesz") return run_verify_riesz(cfg);
  throw_error(error::kind::config, "unknown command '" + cfg.command + "'");
}

}  // namespace fraclap
