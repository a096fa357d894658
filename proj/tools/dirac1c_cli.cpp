// Command-line front end: validate | fields | evolve | reduce | reconstruct |
// equivalence. Exit codes: 0 all-pass, 1 check failure, 2 configuration
// error, 3 degenerate-field condition.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "dirac1c/io.hpp"
#include "dirac1c/pipeline.hpp"

namespace {

using namespace dirac1c;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitDegenerate = 3;

struct CommonOptions {
  std::string config_path;
  std::uint64_t seed = 1;
  int refine = 0;  // 0 = take from config
  std::string out_dir;
  std::string format;
};

ExperimentConfig effective_config(const CommonOptions& opts) {
  ExperimentConfig cfg;
  if (!opts.config_path.empty()) cfg = load_config(opts.config_path);
  if (opts.refine > 0) cfg.refine = opts.refine;
  if (!opts.out_dir.empty()) cfg.output.dir = opts.out_dir;
  if (!opts.format.empty()) cfg.output.format = opts.format;
  return cfg;
}

void print_report(const Report& report) {
  for (const auto& c : report.checks) {
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": value "
              << c.value << " vs tol " << c.tolerance;
    if (c.coverage) std::cout << " (coverage " << *c.coverage << ")";
    std::cout << "\n";
  }
  std::cout << (report.all_pass() ? "all checks passed" : "CHECK FAILURES")
            << "\n";
}

int emit_report(const Report& report, const ExperimentConfig& cfg,
                const std::string& stem) {
  print_report(report);
  save_report(cfg.output.dir, stem, report, cfg.output.format);
  std::cout << "report written to " << cfg.output.dir << "/" << stem << "."
            << cfg.output.format << "\n";
  return report.all_pass() ? kExitPass : kExitCheckFailure;
}

int cmd_validate(const std::string& name, const std::string& dump_path) {
  GammaRepresentation rep = builtin_representation(name);
  ValidationReport vr = validate_representation(rep);
  for (const auto& check : vr.checks)
    std::cout << (check.pass() ? "[PASS] " : "[FAIL] ") << check.name
              << ": max deviation " << check.deviation << "\n";
  if (!dump_path.empty()) {
    save_representation(dump_path, rep);
    std::cout << "representation written to " << dump_path << "\n";
  }
  return vr.pass() ? kExitPass : kExitCheckFailure;
}

int cmd_fields(const std::string& what, const std::string& name) {
  if (what.empty() || what == "list") {
    for (const auto& n : catalog_names()) std::cout << n << "\n";
    return kExitPass;
  }
  // both `fields describe <name>` and `fields <name>` work
  std::cout << describe_field(what == "describe" ? name : what);
  return kExitPass;
}

int cmd_evolve(const CommonOptions& opts, const std::string& csv_slice_path) {
  ExperimentConfig cfg = effective_config(opts);
  std::filesystem::create_directories(cfg.output.dir);
  std::vector<SpinorGridField> blocks;
  for (int level = 0; level < cfg.refine; ++level) {
    blocks.push_back(evolve_level(cfg, level));
    const std::string path =
        cfg.output.dir + "/block_level" + std::to_string(level) + ".grid";
    save_field(path, blocks.back());
    std::cout << "level " << level << ": " << path << " (dt "
              << blocks.back().grid.spacing[0] << ")\n";
  }
  if (!csv_slice_path.empty()) {
    std::ofstream csv(csv_slice_path);
    if (!csv) throw ConfigError("cannot write " + csv_slice_path);
    export_csv_slice(csv, blocks.back(), 0, cfg.evolution.space_axis);
    std::cout << "finest-level (t, x) slice written to " << csv_slice_path << "\n";
  }

  Report report;
  report.seed = opts.seed;
  PotentialField field = catalog(cfg.field.name, cfg.field.params);
  GammaRepresentation rep = resolve_representation(cfg);
  if (cfg.refine >= 3) {
    ResidualLevels res = dirac_residual_report(blocks, field, rep);
    report.add_order("Dirac residual order", res.estimate.order,
                     cfg.tolerances.order_min, cfg.tolerances.order_max);
  }
  double drift = 0.0;
  for (const auto& block : blocks)
    drift = std::max(drift, max_step_norm_drift(block, cfg.evolution.space_axis));
  report.add_max("norm drift per step", drift, 1e-10);
  return emit_report(report, cfg, "evolve_report");
}

SpinorGridField load_spinor_block(const std::string& path) {
  AnyGridField any = load_field(path);
  if (!std::holds_alternative<SpinorGridField>(any))
    throw ConfigError(path + " does not hold a spinor block");
  return std::get<SpinorGridField>(any);
}

int cmd_reduce(const CommonOptions& opts, const std::string& block_path) {
  ExperimentConfig cfg = effective_config(opts);
  ReductionContext ctx = resolve_context(cfg);
  SpinorGridField block = load_spinor_block(block_path);

  ScalarGridField phi = extract_component(block, ctx);
  std::filesystem::create_directories(cfg.output.dir);
  save_field(cfg.output.dir + "/component.grid", phi);
  OneComponentResidual res = one_component_residual(phi, ctx);

  Report report;
  report.seed = opts.seed;
  CheckRecord& c = report.checks.emplace_back();
  c.name = "fourth-order residual (interior max)";
  c.value = res.max_norm;
  c.tolerance = std::numeric_limits<double>::infinity();
  c.pass = true;
  c.coverage = res.coverage;
  report.add_max("dual-route residual agreement", res.dual_route_deviation, 1e-12);
  {
    CheckRecord& cov = report.checks.emplace_back();
    cov.name = "unmasked coverage";
    cov.value = res.coverage;
    cov.tolerance = cfg.tolerances.coverage_min;
    cov.pass = res.coverage >= cfg.tolerances.coverage_min;
    cov.coverage = res.coverage;
  }
  return emit_report(report, cfg, "reduce_report");
}

int cmd_reconstruct(const CommonOptions& opts, const std::string& component_path) {
  ExperimentConfig cfg = effective_config(opts);
  ReductionContext ctx = resolve_context(cfg);
  AnyGridField any = load_field(component_path);
  if (!std::holds_alternative<ScalarGridField>(any))
    throw ConfigError(component_path + " does not hold a scalar component field");
  ScalarGridField phi = std::get<ScalarGridField>(any);

  ReconstructionResult rec = reconstruct_from_component(phi, ctx);
  std::filesystem::create_directories(cfg.output.dir);
  const std::string out_path = cfg.output.dir + "/reconstructed.grid";
  save_field(out_path, rec.full);
  std::cout << "spinor block written to " << out_path << "\n";

  SpinorGridField dres = dirac_residual(rec.full, ctx.field, ctx.rep);
  std::vector<std::uint8_t> mask = erode_mask(phi.grid, rec.mask, 1);

  Report report;
  report.seed = opts.seed;
  CheckRecord& c = report.checks.emplace_back();
  c.name = "reconstructed Dirac residual (interior max)";
  c.value = interior_max_norm(dres, &mask);
  c.tolerance = std::numeric_limits<double>::infinity();
  c.pass = true;
  c.coverage = rec.coverage;
  return emit_report(report, cfg, "reconstruct_report");
}

int cmd_equivalence(const CommonOptions& opts, int sigma_tau_draws) {
  ExperimentConfig cfg = effective_config(opts);
  Report report = run_equivalence(cfg, opts.seed, sigma_tau_draws);
  return emit_report(report, cfg, "equivalence_report");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirac equation <-> fourth-order one-component equation toolkit"};
  app.require_subcommand(1);

  CommonOptions opts;
  app.add_option("--seed", opts.seed, "seed for all randomness")
      ->envname("DIRAC1C_SEED");

  auto* validate = app.add_subcommand("validate", "check a gamma representation");
  std::string rep_name;
  std::string dump_path;
  validate->add_option("name", rep_name, "representation name")->required();
  validate->add_option("--dump", dump_path, "write the representation as JSON");

  auto* fields = app.add_subcommand("fields", "list or describe potential fields");
  std::string field_arg = "list";
  std::string field_name;
  fields->add_option("what", field_arg, "'list', 'describe', or a field name");
  fields->add_option("name", field_name, "field name for 'describe'");

  // every option can also come from the environment with a DIRAC1C_ prefix
  auto add_common = [&opts](CLI::App* cmd) {
    cmd->add_option("--config", opts.config_path, "experiment config JSON")
        ->envname("DIRAC1C_CONFIG");
    cmd->add_option("--refine", opts.refine, "number of refinement levels")
        ->envname("DIRAC1C_REFINE");
    cmd->add_option("--out", opts.out_dir, "output directory")
        ->envname("DIRAC1C_OUT");
    cmd->add_option("--format", opts.format, "report format (json|csv)")
        ->envname("DIRAC1C_FORMAT");
  };

  auto* evolve_cmd = app.add_subcommand("evolve", "manufacture a Dirac solution");
  std::string csv_slice_path;
  evolve_cmd->add_option("--csv-slice", csv_slice_path,
                         "also export the finest block as a CSV (t, x) slice");
  add_common(evolve_cmd);

  auto* reduce_cmd =
      app.add_subcommand("reduce", "fourth-order residual of a block's component");
  std::string block_path;
  reduce_cmd->add_option("--block", block_path, "spinor block dump")->required();
  add_common(reduce_cmd);

  auto* reconstruct_cmd =
      app.add_subcommand("reconstruct", "rebuild the spinor from a component");
  std::string component_path;
  reconstruct_cmd->add_option("--component", component_path, "scalar component dump")
      ->required();
  add_common(reconstruct_cmd);

  auto* equivalence_cmd = app.add_subcommand(
      "equivalence", "full round trip with convergence orders");
  int sigma_tau_draws = 4;
  equivalence_cmd->add_option("--sigma-tau-draws", sigma_tau_draws,
                              "random eta substitutions to test");
  add_common(equivalence_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) return cmd_validate(rep_name, dump_path);
    if (*fields) return cmd_fields(field_arg, field_name);
    if (*evolve_cmd) return cmd_evolve(opts, csv_slice_path);
    if (*reduce_cmd) return cmd_reduce(opts, block_path);
    if (*reconstruct_cmd) return cmd_reconstruct(opts, component_path);
    if (*equivalence_cmd) return cmd_equivalence(opts, sigma_tau_draws);
  } catch (const dirac1c::DegenerateFieldError& e) {
    std::cerr << "degenerate field: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const dirac1c::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailure;
  }
  return kExitConfigError;
}
