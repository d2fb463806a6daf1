#include "fraclap/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace fraclap {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw_error(error::kind::config, "config: " + where + ": " + what);
}

void require_keys(const json& j, const std::string& where,
                  const std::set<std::string>& allowed) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) bad(where, "unknown key '" + it.key() + "'");
}

Point parse_point(const json& j, const std::string& where, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    bad(where, "expected an array of " + std::to_string(n) + " coordinates");
  std::vector<double> c;
  for (const auto& v : j) c.push_back(v.get<double>());
  return Point(std::move(c));
}

FieldSpec parse_field(const json& j, const std::string& where, int n) {
  require_keys(j, where,
               {"expr", "support_radius", "support_center", "decay_M", "decay_p",
                "holder_alpha"});
  if (!j.contains("expr")) bad(where, "missing 'expr'");
  FieldSpec spec;
  spec.expression = parse_expr(j.at("expr").get<std::string>());
  spec.dimension = n;
  if (j.contains("support_radius")) {
    Point c = j.contains("support_center") ? parse_point(j.at("support_center"), where, n)
                                           : Point::zero(n);
    spec.support = Ball(c, j.at("support_radius").get<double>());
  }
  if (j.contains("decay_M"))
    spec.decay = DecayEnvelope{j.at("decay_M").get<double>(),
                               j.contains("decay_p") ? j.at("decay_p").get<double>() : 0.0};
  else if (j.contains("decay_p"))
    bad(where, "'decay_p' requires 'decay_M'");
  if (j.contains("holder_alpha")) spec.holder_alpha = j.at("holder_alpha").get<double>();
  return spec;
}

ModulusSpec parse_modulus(const json& j, const std::string& where) {
  require_keys(j, where, {"kind", "C", "alpha", "domain_cap", "samples"});
  std::string kind = j.at("kind").get<std::string>();
  double cap = j.contains("domain_cap") ? j.at("domain_cap").get<double>() : 2.0;
  if (kind == "power")
    return ModulusSpec::power(j.at("C").get<double>(), j.at("alpha").get<double>(), cap);
  if (kind == "log_lipschitz") return ModulusSpec::log_lipschitz(j.at("C").get<double>(), cap);
  if (kind == "empirical") {
    std::vector<std::pair<double, double>> samples;
    for (const auto& p : j.at("samples"))
      samples.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    return ModulusSpec::empirical(std::move(samples), cap);
  }
  bad(where, "kind must be power, log_lipschitz or empirical");
}

}  // namespace

RunConfig RunConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    bad("parse", e.what());
  }
  if (!j.is_object()) bad("root", "expected a JSON object");
  require_keys(j, "root",
               {"command", "n", "s", "seed", "budget", "ball", "fields", "probes", "pairs",
                "modulus", "radii", "alpha_order", "depth", "rho", "ratio_cap", "field_count",
                "probe_count", "output"});

  RunConfig cfg;
  if (j.contains("command")) cfg.command = j.at("command").get<std::string>();
  if (j.contains("n")) cfg.n = j.at("n").get<int>();
  if (cfg.n != 2 && cfg.n != 3) bad("n", "engines support n in {2,3}");
  if (j.contains("s")) cfg.s = j.at("s").get<double>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();

  if (j.contains("budget")) {
    const json& b = j.at("budget");
    require_keys(b, "budget",
                 {"radial_nodes", "angular_nodes", "truncation_radius", "inner_cutoff",
                  "target_rel_tol", "max_refinements"});
    if (b.contains("radial_nodes")) cfg.budget.radial_nodes = b.at("radial_nodes").get<int>();
    if (b.contains("angular_nodes"))
      cfg.budget.angular_nodes = b.at("angular_nodes").get<int>();
    if (b.contains("truncation_radius"))
      cfg.budget.truncation_radius = b.at("truncation_radius").get<double>();
    if (b.contains("inner_cutoff")) cfg.budget.inner_cutoff = b.at("inner_cutoff").get<double>();
    if (b.contains("target_rel_tol"))
      cfg.budget.target_rel_tol = b.at("target_rel_tol").get<double>();
    if (b.contains("max_refinements"))
      cfg.budget.max_refinements = b.at("max_refinements").get<int>();
    cfg.budget.validate();
  }

  if (j.contains("ball")) {
    const json& b = j.at("ball");
    require_keys(b, "ball", {"center", "radius"});
    if (b.contains("center")) cfg.ball_center = parse_point(b.at("center"), "ball.center", cfg.n);
    if (b.contains("radius")) cfg.ball_radius = b.at("radius").get<double>();
    if (!(cfg.ball_radius > 0.0)) bad("ball.radius", "must be positive");
  }

  if (j.contains("fields")) {
    for (auto it = j.at("fields").begin(); it != j.at("fields").end(); ++it)
      cfg.fields.emplace(it.key(), parse_field(it.value(), "fields." + it.key(), cfg.n));
  }

  if (j.contains("probes"))
    for (const auto& p : j.at("probes")) cfg.probes.push_back(parse_point(p, "probes", cfg.n));
  if (j.contains("pairs"))
    for (const auto& p : j.at("pairs")) {
      if (!p.is_array() || p.size() != 2) bad("pairs", "each pair is [[...],[...]]");
      cfg.pairs.emplace_back(parse_point(p.at(0), "pairs", cfg.n),
                             parse_point(p.at(1), "pairs", cfg.n));
    }
  if (j.contains("modulus")) cfg.modulus = parse_modulus(j.at("modulus"), "modulus");
  if (j.contains("radii")) {
    cfg.radii.clear();
    for (const auto& r : j.at("radii")) cfg.radii.push_back(r.get<double>());
    if (cfg.radii.empty()) bad("radii", "must be non-empty");
  }
  if (j.contains("alpha_order")) {
    cfg.alpha_order.clear();
    for (const auto& a : j.at("alpha_order")) cfg.alpha_order.push_back(a.get<int>());
  }
  if (j.contains("depth")) cfg.depth = j.at("depth").get<int>();
  if (j.contains("rho")) cfg.rho = j.at("rho").get<double>();
  if (j.contains("ratio_cap")) cfg.ratio_cap = j.at("ratio_cap").get<double>();
  if (j.contains("field_count")) cfg.field_count = j.at("field_count").get<int>();
  if (j.contains("probe_count")) cfg.probe_count = j.at("probe_count").get<int>();

  if (j.contains("output")) {
    const json& o = j.at("output");
    require_keys(o, "output", {"format", "path"});
    if (o.contains("format")) cfg.out_format = o.at("format").get<std::string>();
    if (o.contains("path")) cfg.out_path = o.at("path").get<std::string>();
    if (cfg.out_format != "csv" && cfg.out_format != "json")
      bad("output.format", "must be csv or json");
  }
  return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_error(error::kind::config, "cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

}  // namespace fraclap
