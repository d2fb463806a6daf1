#include "fraclap/report_io.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace fraclap {

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void atomic_write(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw_error(error::kind::io, "cannot open " + tmp + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw_error(error::kind::io, "short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw_error(error::kind::io, "cannot rename " + tmp + " to " + path);
}

namespace {

std::string csv_safe(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n') c = ';';
  return s;
}

}  // namespace

std::string report_to_csv(const VerificationReport& r) {
  std::string out = "probe_id,scale,lhs,rhs,ratio,note\n";
  for (const auto& row : r.probes) {
    out += csv_safe(row.id);
    out += ',';
    out += format17(row.scale);
    out += ',';
    out += format17(row.lhs);
    out += ',';
    out += format17(row.rhs);
    out += ',';
    out += format17(row.ratio);
    out += ',';
    out += csv_safe(row.note);
    out += '\n';
  }
  return out;
}

std::string report_to_json(const VerificationReport& r) {
  nlohmann::json j;
  j["passed"] = r.passed;
  j["notes"] = r.notes;
  if (r.fitted_exponent)
    j["fitted_exponent"] = *r.fitted_exponent;
  else
    j["fitted_exponent"] = nullptr;
  j["probes"] = nlohmann::json::array();
  for (const auto& row : r.probes) {
    nlohmann::json p;
    p["id"] = row.id;
    p["scale"] = row.scale;
    p["lhs"] = row.lhs;
    p["rhs"] = row.rhs;
    p["ratio"] = row.ratio;
    p["note"] = row.note;
    j["probes"].push_back(p);
  }
  return j.dump(2) + "\n";
}

VerificationReport report_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  VerificationReport r;
  r.passed = j.at("passed").get<bool>();
  r.notes = j.at("notes").get<std::string>();
  if (!j.at("fitted_exponent").is_null())
    r.fitted_exponent = j.at("fitted_exponent").get<double>();
  for (const auto& p : j.at("probes")) {
    ProbeRow row;
    row.id = p.at("id").get<std::string>();
    row.scale = p.at("scale").get<double>();
    row.lhs = p.at("lhs").get<double>();
    row.rhs = p.at("rhs").get<double>();
    row.ratio = p.at("ratio").get<double>();
    row.note = p.at("note").get<std::string>();
    r.probes.push_back(std::move(row));
  }
  return r;
}

void emit_report(const VerificationReport& r, const std::string& format,
                 const std::string& path) {
  if (format == "csv")
    atomic_write(path, report_to_csv(r));
  else if (format == "json")
    atomic_write(path, report_to_json(r));
  else
    throw_error(error::kind::config, "emit_report: format must be csv or json");
}

}  // namespace fraclap
