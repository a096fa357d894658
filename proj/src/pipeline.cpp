#include "dirac1c/pipeline.hpp"

#include <cmath>

namespace dirac1c {

namespace {

struct TrigMode {
  Complex amp;
  Vector4r wave;  // contraction with the coordinate, not the Lorentz product
};

std::vector<TrigMode> draw_modes(const SpacetimeGrid& grid, Rng& rng, int modes) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<int> harmonic(-2, 2);
  std::uniform_real_distribution<double> continuous(-1.5, 1.5);
  std::vector<TrigMode> out;
  out.reserve(modes);
  for (int m = 0; m < modes; ++m) {
    TrigMode mode;
    mode.amp = Complex(normal(rng), normal(rng)) / double(modes);
    mode.wave = Vector4r::Zero();
    for (int ax = 0; ax < 4; ++ax) {
      if (grid.extents[ax] == 1) continue;
      if (grid.boundary[ax] == Boundary::periodic) {
        const double base = 2.0 * M_PI / (grid.extents[ax] * grid.spacing[ax]);
        mode.wave(ax) = harmonic(rng) * base;
      } else {
        mode.wave(ax) = continuous(rng);
      }
    }
    out.push_back(mode);
  }
  return out;
}

Complex eval_modes(const std::vector<TrigMode>& modes, const Vector4r& x) {
  Complex acc = 0.0;
  for (const auto& m : modes) acc += m.amp * std::exp(kImag * m.wave.dot(x));
  return acc;
}

double masked_block_diff(const SpinorGridField& a, const SpinorGridField& b,
                         const Margin& margin, const std::vector<std::uint8_t>* mask) {
  double dev = 0.0;
  for_each_interior(a.grid, margin, [&](long p, const std::array<int, 4>&) {
    if (mask && !(*mask)[p]) return;
    dev = std::max(dev, (a.values.col(p) - b.values.col(p)).cwiseAbs().maxCoeff());
  });
  return dev;
}

}  // namespace

ScalarGridField random_trig_scalar(const SpacetimeGrid& grid, Rng& rng, int modes) {
  auto drawn = draw_modes(grid, rng, modes);
  return ScalarGridField::sample(
      grid, [&drawn](const Vector4r& x) { return eval_modes(drawn, x); });
}

SpinorGridField random_trig_spinor(const SpacetimeGrid& grid, Rng& rng, int modes) {
  std::array<std::vector<TrigMode>, 4> drawn;
  for (auto& component : drawn) component = draw_modes(grid, rng, modes);
  return SpinorGridField::sample(grid, [&drawn](const Vector4r& x) {
    Spinor s;
    for (int comp = 0; comp < 4; ++comp) s(comp) = eval_modes(drawn[comp], x);
    return s;
  });
}

GammaRepresentation resolve_representation(const ExperimentConfig& config) {
  return builtin_representation(config.representation);
}

ChiralBasis resolve_basis(const ExperimentConfig& config,
                          const GammaRepresentation& rep) {
  if (config.basis.mode == "explicit") {
    Spinor xi, eta;
    for (int i = 0; i < 4; ++i) {
      xi(i) = (*config.basis.xi)[i];
      eta(i) = (*config.basis.eta)[i];
    }
    return make_chiral_basis(rep, config.basis.sign, std::make_pair(xi, eta));
  }
  return make_chiral_basis(rep, config.basis.sign);
}

ReductionContext resolve_context(const ExperimentConfig& config) {
  GammaRepresentation rep = resolve_representation(config);
  ChiralBasis basis = resolve_basis(config, rep);
  PotentialField field = catalog(config.field.name, config.field.params);
  return ReductionContext::make(std::move(rep), std::move(basis), std::move(field));
}

SpinorGridField evolve_level(const ExperimentConfig& config, int level) {
  EvolutionProblem problem;
  problem.rep = resolve_representation(config);
  problem.field = catalog(config.field.name, config.field.params);
  problem.grid = config.make_grid(level);
  problem.space_axis = config.evolution.space_axis;
  problem.initial = initial_data(config.evolution.initial, problem.grid,
                                 problem.space_axis, config.evolution.params,
                                 problem.rep);
  return evolve(problem);
}

Report run_equivalence(const ExperimentConfig& config, std::uint64_t seed,
                       int sigma_tau_draws) {
  Report report;
  report.seed = seed;
  Rng rng(seed);

  ReductionContext ctx = resolve_context(config);
  const auto& tol = config.tolerances;

  std::vector<std::pair<double, double>> forward, recon_err, recon_dirac;
  double min_coverage = 1.0;
  double max_dual_route = 0.0;
  double max_norm_drift = 0.0;
  double max_b_prime_dev = 0.0;
  ScalarGridField coarse_phi;

  for (int level = 0; level < config.refine; ++level) {
    SpinorGridField truth = evolve_level(config, level);
    max_norm_drift =
        std::max(max_norm_drift,
                 max_step_norm_drift(truth, config.evolution.space_axis));
    const double h = truth.grid.spacing[0];

    ScalarGridField phi = extract_component(truth, ctx);
    if (level == 0) coarse_phi = phi;

    OneComponentResidual res = one_component_residual(phi, ctx);
    forward.emplace_back(h, res.max_norm);
    min_coverage = std::min(min_coverage, res.coverage);
    max_dual_route = std::max(max_dual_route, res.dual_route_deviation);
    max_b_prime_dev = std::max(max_b_prime_dev,
                               coefficient_grids(ctx, phi.grid).max_b_prime_deviation);

    ReconstructionResult rec = reconstruct_from_component(phi, ctx);
    recon_err.emplace_back(
        h, masked_block_diff(rec.full, truth, rec.full.margin, &rec.mask));

    SpinorGridField dres = dirac_residual(rec.full, ctx.field, ctx.rep);
    std::vector<std::uint8_t> rmask = erode_mask(phi.grid, rec.mask, 1);
    recon_dirac.emplace_back(h, interior_max_norm(dres, &rmask));
  }

  report.add_order("forward residual order", convergence_order(forward).order,
                   tol.order_min, tol.order_max);
  report.add_order("reconstruction error order", convergence_order(recon_err).order,
                   tol.order_min, tol.order_max);
  report.add_order("reconstructed Dirac residual order",
                   convergence_order(recon_dirac).order, tol.order_min,
                   tol.order_max);
  {
    CheckRecord& c = report.checks.emplace_back();
    c.name = "unmasked coverage";
    c.value = min_coverage;
    c.tolerance = tol.coverage_min;
    c.pass = min_coverage >= tol.coverage_min;
    c.coverage = min_coverage;
  }
  report.add_max("dual-route residual agreement", max_dual_route, 1e-12);
  report.add_max("b' = -a", max_b_prime_dev, 1e-12);
  report.add_max("norm drift per step", max_norm_drift, 1e-10);

  std::uniform_real_distribution<double> unit(-2.0, 2.0);
  double op_dev = 0.0, rec_dev = 0.0;
  for (int draw = 0; draw < sigma_tau_draws; ++draw) {
    Complex sigma(unit(rng), unit(rng));
    while (std::abs(sigma) < 0.1) sigma = Complex(unit(rng), unit(rng));
    Complex tau(unit(rng), unit(rng));
    EtaIndependenceReport eta = eta_independence_check(coarse_phi, ctx, sigma, tau);
    op_dev = std::max(op_dev, eta.operator_scaling_deviation);
    rec_dev = std::max(rec_dev, eta.reconstruction_deviation);
  }
  report.add_max("eta independence: operator scaling", op_dev, tol.eta_independence);
  report.add_max("eta independence: reconstruction", rec_dev, tol.eta_independence);

  return report;
}

}  // namespace dirac1c
