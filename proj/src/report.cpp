#include "dirac1c/report.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "dirac1c/types.hpp"

namespace dirac1c {

namespace {
using json = nlohmann::ordered_json;

std::string fmt17(double v) {
  char buf[64];
  snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace

bool Report::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckRecord& c) { return c.pass; });
}

CheckRecord& Report::add_max(const std::string& name, double value, double tolerance) {
  checks.push_back({name, value, tolerance, value <= tolerance, {}, {}});
  return checks.back();
}

CheckRecord& Report::add_order(const std::string& name, double order, double lo,
                               double hi) {
  CheckRecord rec{name, order, hi, order >= lo && order <= hi, order, {}};
  checks.push_back(rec);
  return checks.back();
}

std::string report_to_json(const Report& report) {
  json j;
  j["version"] = kVersion;
  j["seed"] = report.seed;
  j["all_pass"] = report.all_pass();
  json checks = json::array();
  for (const auto& c : report.checks) {
    json jc;
    jc["check"] = c.name;
    jc["value"] = c.value;
    jc["tol"] = c.tolerance;
    jc["pass"] = c.pass;
    jc["order"] = c.order ? json(*c.order) : json(nullptr);
    jc["coverage"] = c.coverage ? json(*c.coverage) : json(nullptr);
    checks.push_back(jc);
  }
  j["checks"] = checks;
  return j.dump(2) + "\n";
}

std::string report_to_csv(const Report& report) {
  std::string out = "check,value,tol,pass,order,coverage\n";
  for (const auto& c : report.checks) {
    out += c.name + "," + fmt17(c.value) + "," + fmt17(c.tolerance) + "," +
           (c.pass ? "1" : "0") + "," + (c.order ? fmt17(*c.order) : "") + "," +
           (c.coverage ? fmt17(*c.coverage) : "") + "\n";
  }
  return out;
}

void save_report(const std::string& dir, const std::string& stem,
                 const Report& report, const std::string& format) {
  if (format != "json" && format != "csv")
    throw ConfigError("unknown report format '" + format + "' (json|csv)");
  std::filesystem::create_directories(dir);
  const std::string path = dir + "/" + stem + "." + format;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << (format == "json" ? report_to_json(report) : report_to_csv(report));
}

}  // namespace dirac1c
