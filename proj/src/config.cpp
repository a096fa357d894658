#include "dirac1c/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace dirac1c {

namespace {

using json = nlohmann::ordered_json;

void require_keys(const json& j, const std::string& where,
                  const std::set<std::string>& known) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key()))
      throw ConfigError(where + ": unknown key '" + it.key() + "'");
}

std::array<Complex, 4> parse_spinor(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 4)
    throw ConfigError(where + " must be 4 [re, im] pairs");
  std::array<Complex, 4> out;
  for (int i = 0; i < 4; ++i) {
    if (!j[i].is_array() || j[i].size() != 2)
      throw ConfigError(where + " entries must be [re, im]");
    out[i] = Complex(j[i][0].get<double>(), j[i][1].get<double>());
  }
  return out;
}

json spinor_to_json(const std::array<Complex, 4>& s) {
  json j = json::array();
  for (const auto& c : s) j.push_back({c.real(), c.imag()});
  return j;
}

FieldParams parse_params(const json& j, const std::string& where) {
  FieldParams out;
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!it.value().is_number())
      throw ConfigError(where + ": parameter '" + it.key() + "' must be a number");
    out[it.key()] = it.value().get<double>();
  }
  return out;
}

}  // namespace

SpacetimeGrid ExperimentConfig::make_grid() const { return make_grid(0); }

SpacetimeGrid ExperimentConfig::make_grid(int level) const {
  SpacetimeGrid g;
  const int factor = 1 << level;
  for (int ax = 0; ax < 4; ++ax) {
    if (grid.extents[ax] > 1) {
      // Trim axes refine the cell count (keeping the covered span); the
      // first extent entry counts samples, so steps double per level.
      if (grid.boundary[ax] == "trim")
        g.extents[ax] = (grid.extents[ax] - 1) * factor + 1;
      else
        g.extents[ax] = grid.extents[ax] * factor;
      g.spacing[ax] = grid.spacings[ax] / factor;
    } else {
      g.extents[ax] = 1;
      g.spacing[ax] = grid.spacings[ax];
    }
    g.origin[ax] = grid.origin[ax];
    g.boundary[ax] = grid.boundary[ax] == "periodic" ? Boundary::periodic
                                                     : Boundary::trim;
  }
  g.validate();
  return g;
}

ExperimentConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  require_keys(j, "config",
               {"representation", "basis", "field", "grid", "evolution", "refine",
                "tolerances", "output"});

  ExperimentConfig cfg;
  if (j.contains("representation"))
    cfg.representation = j["representation"].get<std::string>();

  if (j.contains("basis")) {
    const json& b = j["basis"];
    require_keys(b, "basis", {"mode", "sign", "xi", "eta"});
    if (b.contains("mode")) cfg.basis.mode = b["mode"].get<std::string>();
    if (cfg.basis.mode != "default" && cfg.basis.mode != "explicit")
      throw ConfigError("basis.mode must be default|explicit");
    if (b.contains("sign")) cfg.basis.sign = b["sign"].get<int>();
    if (cfg.basis.sign != 1 && cfg.basis.sign != -1)
      throw ConfigError("basis.sign must be +1 or -1");
    if (b.contains("xi")) cfg.basis.xi = parse_spinor(b["xi"], "basis.xi");
    if (b.contains("eta")) cfg.basis.eta = parse_spinor(b["eta"], "basis.eta");
    if (cfg.basis.mode == "explicit" && (!cfg.basis.xi || !cfg.basis.eta))
      throw ConfigError("explicit basis needs both xi and eta");
  }

  if (j.contains("field")) {
    const json& f = j["field"];
    require_keys(f, "field", {"name", "params"});
    if (f.contains("name")) cfg.field.name = f["name"].get<std::string>();
    if (f.contains("params")) cfg.field.params = parse_params(f["params"], "field.params");
  }

  if (j.contains("grid")) {
    const json& g = j["grid"];
    require_keys(g, "grid", {"extents", "spacings", "origin", "boundary"});
    for (int ax = 0; ax < 4; ++ax) {
      if (g.contains("extents")) cfg.grid.extents[ax] = g["extents"][ax].get<int>();
      if (g.contains("spacings")) cfg.grid.spacings[ax] = g["spacings"][ax].get<double>();
      if (g.contains("origin")) cfg.grid.origin[ax] = g["origin"][ax].get<double>();
      if (g.contains("boundary")) {
        cfg.grid.boundary[ax] = g["boundary"][ax].get<std::string>();
        if (cfg.grid.boundary[ax] != "periodic" && cfg.grid.boundary[ax] != "trim")
          throw ConfigError("grid.boundary entries must be periodic|trim");
      }
    }
  }

  if (j.contains("evolution")) {
    const json& e = j["evolution"];
    require_keys(e, "evolution", {"initial", "params", "space_axis"});
    if (e.contains("initial")) cfg.evolution.initial = e["initial"].get<std::string>();
    if (e.contains("params"))
      cfg.evolution.params = parse_params(e["params"], "evolution.params");
    if (e.contains("space_axis")) cfg.evolution.space_axis = e["space_axis"].get<int>();
  }

  if (j.contains("refine")) {
    cfg.refine = j["refine"].get<int>();
    if (cfg.refine < 1 || cfg.refine > 8)
      throw ConfigError("refine must be between 1 and 8");
  }

  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    require_keys(t, "tolerances",
                 {"order_min", "order_max", "eta_independence", "coverage_min"});
    if (t.contains("order_min")) cfg.tolerances.order_min = t["order_min"].get<double>();
    if (t.contains("order_max")) cfg.tolerances.order_max = t["order_max"].get<double>();
    if (t.contains("eta_independence"))
      cfg.tolerances.eta_independence = t["eta_independence"].get<double>();
    if (t.contains("coverage_min"))
      cfg.tolerances.coverage_min = t["coverage_min"].get<double>();
  }

  if (j.contains("output")) {
    const json& o = j["output"];
    require_keys(o, "output", {"dir", "format"});
    if (o.contains("dir")) cfg.output.dir = o["dir"].get<std::string>();
    if (o.contains("format")) cfg.output.format = o["format"].get<std::string>();
    if (cfg.output.format != "json" && cfg.output.format != "csv")
      throw ConfigError("output.format must be json|csv");
  }
  return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["representation"] = cfg.representation;

  json b;
  b["mode"] = cfg.basis.mode;
  b["sign"] = cfg.basis.sign;
  if (cfg.basis.xi) b["xi"] = spinor_to_json(*cfg.basis.xi);
  if (cfg.basis.eta) b["eta"] = spinor_to_json(*cfg.basis.eta);
  j["basis"] = b;

  json f;
  f["name"] = cfg.field.name;
  f["params"] = json::object();
  for (const auto& [key, value] : cfg.field.params) f["params"][key] = value;
  j["field"] = f;

  json g;
  g["extents"] = cfg.grid.extents;
  g["spacings"] = cfg.grid.spacings;
  g["origin"] = cfg.grid.origin;
  g["boundary"] = cfg.grid.boundary;
  j["grid"] = g;

  json e;
  e["initial"] = cfg.evolution.initial;
  e["params"] = json::object();
  for (const auto& [key, value] : cfg.evolution.params) e["params"][key] = value;
  e["space_axis"] = cfg.evolution.space_axis;
  j["evolution"] = e;

  j["refine"] = cfg.refine;

  json t;
  t["order_min"] = cfg.tolerances.order_min;
  t["order_max"] = cfg.tolerances.order_max;
  t["eta_independence"] = cfg.tolerances.eta_independence;
  t["coverage_min"] = cfg.tolerances.coverage_min;
  j["tolerances"] = t;

  json o;
  o["dir"] = cfg.output.dir;
  o["format"] = cfg.output.format;
  j["output"] = o;

  return j.dump(2) + "\n";
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json(ss.str());
}

}  // namespace dirac1c
