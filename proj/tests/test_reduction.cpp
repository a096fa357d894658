#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dirac1c/pipeline.hpp"

using namespace dirac1c;

namespace {

const Spinor kXiLower = (Spinor() << 0, 0, -1, 0).finished();
const Spinor kEtaLower = (Spinor() << 0, 0, 0, 1).finished();

SpacetimeGrid evolution_grid(int n, double t_total = 1.0) {
  SpacetimeGrid g;
  g.extents = {n + 1, n, 1, 1};
  g.spacing = {t_total / n, 2.0 * M_PI / n, 1.0, 1.0};
  g.origin = {0.0, 0.0, 0.0, 0.0};
  g.boundary = {Boundary::trim, Boundary::periodic, Boundary::periodic,
                Boundary::periodic};
  return g;
}

ReductionContext lower_basis_context(const PotentialField& field) {
  GammaRepresentation rep = builtin_representation("chiral");
  ChiralBasis basis = make_chiral_basis(rep, -1, std::make_pair(kXiLower, kEtaLower));
  return ReductionContext::make(rep, basis, field);
}

SpinorGridField evolve_block(const PotentialField& field, int n,
                             const std::string& initial = "gaussian") {
  EvolutionProblem prob;
  prob.rep = builtin_representation("chiral");
  prob.field = field;
  prob.grid = evolution_grid(n);
  prob.space_axis = 1;
  // sigma wide enough that the coarsest level resolves the packet
  prob.initial = initial_data(initial, prob.grid, 1, {{"sigma", 0.7}}, prob.rep);
  return evolve(prob);
}

const PotentialField kConstE = catalog("constant-E", {{"E", 1.0}, {"gauge", 1.0}});

// blocks shared across test cases; computed once
const std::vector<int> kLevels{48, 96, 192};
const std::vector<SpinorGridField>& const_e_blocks() {
  static const std::vector<SpinorGridField> blocks = [] {
    std::vector<SpinorGridField> out;
    for (int n : kLevels) out.push_back(evolve_block(kConstE, n));
    return out;
  }();
  return blocks;
}

double masked_spinor_diff(const SpinorGridField& a, const SpinorGridField& b,
                          const Margin& margin,
                          const std::vector<std::uint8_t>* mask = nullptr) {
  double dev = 0.0;
  for_each_interior(a.grid, margin, [&](long p, const std::array<int, 4>&) {
    if (mask && !(*mask)[p]) return;
    dev = std::max(dev, (a.values.col(p) - b.values.col(p)).cwiseAbs().maxCoeff());
  });
  return dev;
}

}  // namespace

TEST_CASE("extract_component picks psi_1 for the published chiral basis") {
  ReductionContext ctx = lower_basis_context(kConstE);
  SpacetimeGrid g = evolution_grid(8);
  Rng rng(3);
  SpinorGridField psi = random_trig_spinor(g, rng);
  ScalarGridField phi = extract_component(psi, ctx);
  for (long p = 0; p < g.num_points(); ++p)
    CHECK(std::abs(phi.values(p) - psi.values(0, p)) <= 1e-15);

  CHECK(extract_component(SpinorGridField::zeros(g), ctx).values.cwiseAbs().maxCoeff() ==
        0.0);
}

TEST_CASE("extract_component agrees with the explicit four-term contraction") {
  GammaRepresentation rep = builtin_representation("majorana");
  ChiralBasis basis = make_chiral_basis(rep, +1);
  ReductionContext ctx = ReductionContext::make(rep, basis, kConstE);
  SpacetimeGrid g = evolution_grid(6);
  Rng rng(5);
  SpinorGridField psi = random_trig_spinor(g, rng);
  ScalarGridField phi = extract_component(psi, ctx);

  const CoSpinor xi_bar = dirac_adjoint(basis.xi, rep);
  for (long p = 0; p < g.num_points(); ++p) {
    Complex manual = 0.0;
    for (int comp = 0; comp < 4; ++comp) manual += xi_bar(comp) * psi.values(comp, p);
    CHECK(std::abs(phi.values(p) - manual) <= 1e-15);
  }
}

TEST_CASE("forward reduction: manufactured solutions satisfy the fourth-order "
          "equation at order 2") {
  ReductionContext ctx = lower_basis_context(kConstE);
  std::vector<std::pair<double, double>> norms;
  for (const auto& block : const_e_blocks()) {
    ScalarGridField phi = extract_component(block, ctx);
    OneComponentResidual res = one_component_residual(phi, ctx);
    CHECK(res.coverage == 1.0);
    CHECK(res.dual_route_deviation <= 1e-12);
    norms.emplace_back(block.grid.spacing[0], res.max_norm);
  }
  ConvergenceEstimate est = convergence_order(norms);
  CHECK(est.order > 1.8);
  CHECK(est.order < 2.2);
}

TEST_CASE("negative control: a random smooth non-solution does not converge") {
  ReductionContext ctx = lower_basis_context(kConstE);
  const std::uint64_t seed = 99;
  std::vector<std::pair<double, double>> norms;
  for (int n : kLevels) {
    Rng rng(seed);
    ScalarGridField phi = random_trig_scalar(evolution_grid(n), rng);
    OneComponentResidual res = one_component_residual(phi, ctx);
    norms.emplace_back(1.0 / n, res.max_norm);
  }
  CHECK(convergence_order(norms).order < 0.5);
}

TEST_CASE("eta component reconstruction") {
  ReductionContext ctx = lower_basis_context(kConstE);

  SUBCASE("round trip against the evolved truth at order 2") {
    const CoSpinor eta_bar = dirac_adjoint(ctx.basis.eta, ctx.rep);
    std::vector<std::pair<double, double>> errs;
    for (const auto& block : const_e_blocks()) {
      ScalarGridField phi = extract_component(block, ctx);
      ReconstructedComponent rec = reconstruct_eta_component(phi, ctx);
      CHECK(rec.coverage == 1.0);
      CHECK(rec.dual_route_deviation <= 1e-12);
      double err = 0.0;
      for_each_interior(block.grid, rec.field.margin,
                        [&](long p, const std::array<int, 4>&) {
                          Complex direct = eta_bar * block.values.col(p);
                          err = std::max(err, std::abs(rec.field.values(p) - direct));
                        });
      errs.emplace_back(block.grid.spacing[0], err);
    }
    ConvergenceEstimate est = convergence_order(errs);
    CHECK(est.order > 1.8);
    CHECK(est.order < 2.2);
  }

  SUBCASE("zero component reconstructs to zero") {
    ScalarGridField zero = ScalarGridField::zeros(evolution_grid(12));
    ReconstructedComponent rec = reconstruct_eta_component(zero, ctx);
    CHECK(interior_max_norm(rec.field, &rec.mask) == 0.0);
  }

  SUBCASE("both algebraic forms agree on arbitrary smooth input") {
    Rng rng(17);
    ScalarGridField phi = random_trig_scalar(evolution_grid(24), rng);
    ReconstructedComponent rec = reconstruct_eta_component(phi, ctx);
    CHECK(rec.dual_route_deviation <= 1e-12);
  }
}

TEST_CASE("chiral part reconstruction") {
  ReductionContext ctx = lower_basis_context(kConstE);

  SUBCASE("matches the projected truth at order 2 and has pure chirality") {
    std::vector<std::pair<double, double>> errs;
    for (const auto& block : const_e_blocks()) {
      ScalarGridField phi = extract_component(block, ctx);
      ReconstructedComponent eta = reconstruct_eta_component(phi, ctx);
      SpinorGridField part = reconstruct_chiral_part(phi, eta.field, ctx);

      // gamma5 eigenfield with eigenvalue -sign = +1
      double chirality = 0.0;
      double err = 0.0;
      for_each_interior(block.grid, part.margin,
                        [&](long p, const std::array<int, 4>&) {
                          Spinor v = part.values.col(p);
                          chirality = std::max(chirality,
                                               (ctx.rep.gamma5 * v - v)
                                                   .cwiseAbs()
                                                   .maxCoeff());
                          Spinor truth_part =
                              chiral_project(block.values.col(p), +1, ctx.rep);
                          err = std::max(err, (v - truth_part).cwiseAbs().maxCoeff());
                        });
      CHECK(chirality <= 1e-12);
      errs.emplace_back(block.grid.spacing[0], err);
    }
    ConvergenceEstimate est = convergence_order(errs);
    CHECK(est.order > 1.8);
    CHECK(est.order < 2.2);
  }

  SUBCASE("zero inputs give zero") {
    SpacetimeGrid g = evolution_grid(8);
    SpinorGridField part = reconstruct_chiral_part(ScalarGridField::zeros(g),
                                                   ScalarGridField::zeros(g), ctx);
    CHECK(part.values.cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("extracting the reconstructed part returns phi exactly") {
    // pure algebra, no stencils: xiBar psi_part = phi to rounding
    Rng rng(23);
    SpacetimeGrid g = evolution_grid(12);
    ScalarGridField phi = random_trig_scalar(g, rng);
    ScalarGridField eta_phi = random_trig_scalar(g, rng);
    SpinorGridField part = reconstruct_chiral_part(phi, eta_phi, ctx);
    ScalarGridField back = extract_component(part, ctx);
    double err = 0.0;
    for (long p = 0; p < g.num_points(); ++p)
      err = std::max(err, std::abs(back.values(p) - phi.values(p)));
    CHECK(err <= 1e-12);
  }
}

TEST_CASE("full reconstruction") {
  ReductionContext ctx = lower_basis_context(kConstE);

  SUBCASE("round trip on evolver truth: error and Dirac residual at order 2") {
    std::vector<std::pair<double, double>> errs, dirac_errs;
    for (const auto& block : const_e_blocks()) {
      ScalarGridField phi = extract_component(block, ctx);
      ReconstructionResult rec = reconstruct_from_component(phi, ctx);
      CHECK(rec.coverage == 1.0);
      errs.emplace_back(block.grid.spacing[0],
                        masked_spinor_diff(rec.full, block, rec.full.margin));

      SpinorGridField dres = dirac_residual(rec.full, ctx.field, ctx.rep);
      dirac_errs.emplace_back(block.grid.spacing[0], interior_max_norm(dres));
    }
    ConvergenceEstimate est = convergence_order(errs);
    CHECK(est.order > 1.8);
    CHECK(est.order < 2.2);
    ConvergenceEstimate dirac_est = convergence_order(dirac_errs);
    CHECK(dirac_est.order > 1.8);
    CHECK(dirac_est.order < 2.2);
  }

  SUBCASE("analytic free solution from its exact chiral part") {
    GammaRepresentation rep = builtin_representation("chiral");
    ChiralBasis basis = make_chiral_basis(rep, -1, std::make_pair(kXiLower, kEtaLower));
    PotentialField vacuum = catalog("zero");
    ReductionContext free_ctx = ReductionContext::make(rep, basis, vacuum);

    const double p1 = 1.0;
    const double p0 = std::sqrt(2.0);
    Spinor w = (p0 * rep.gamma[0] - p1 * rep.gamma[1] + Matrix4c::Identity()) *
               Spinor::Unit(0);
    w /= w.norm();

    std::vector<std::pair<double, double>> errs;
    for (int n : kLevels) {
      SpacetimeGrid g = evolution_grid(n);
      SpinorGridField psi = SpinorGridField::sample(g, [&](const Vector4r& x) {
        return Spinor(w * std::exp(-kImag * (p0 * x(0) - p1 * x(1))));
      });
      SpinorGridField part = SpinorGridField::zeros(g);
      for (long p = 0; p < g.num_points(); ++p)
        part.values.col(p) = chiral_project(psi.values.col(p), +1, rep);
      SpinorGridField rec = reconstruct_full(part, free_ctx);
      errs.emplace_back(g.spacing[0], masked_spinor_diff(rec, psi, rec.margin));
    }
    ConvergenceEstimate est = convergence_order(errs);
    CHECK(est.order > 1.8);
    CHECK(est.order < 2.2);
  }
}

TEST_CASE("eta independence") {
  ReductionContext ctx = lower_basis_context(kConstE);
  Rng rng(31);
  ScalarGridField phi = random_trig_scalar(evolution_grid(24), rng);

  SUBCASE("identity substitution changes nothing") {
    EtaIndependenceReport rep = eta_independence_check(phi, ctx, Complex(1.0), Complex(0.0));
    CHECK(rep.operator_scaling_deviation <= 1e-13);
    CHECK(rep.reconstruction_deviation <= 1e-13);
  }

  SUBCASE("sigma = 2 scales the covariant operator by 4") {
    MaskedScalarField base = covariant_operator_apply(phi, ctx);
    ChiralBasis scaled = ctx.basis;
    scaled.eta = 2.0 * ctx.basis.eta;
    ReductionContext ctx2 = ReductionContext::make(ctx.rep, scaled, ctx.field);
    MaskedScalarField quad = covariant_operator_apply(phi, ctx2);
    double dev = 0.0;
    for_each_interior(phi.grid, base.field.margin,
                      [&](long p, const std::array<int, 4>&) {
                        if (!base.mask[p] || !quad.mask[p]) return;
                        dev = std::max(dev, std::abs(quad.field.values(p) -
                                                     4.0 * base.field.values(p)));
                      });
    CHECK(dev <= 1e-10 * base.max_norm());
  }

  SUBCASE("complex sigma and tau leave the reconstruction unchanged") {
    EtaIndependenceReport rep =
        eta_independence_check(phi, ctx, Complex(0.0, 1.0), Complex(1.0, 1.0));
    CHECK(rep.reconstruction_deviation <= 1e-10);
    CHECK(rep.operator_scaling_deviation <= 1e-10);
  }

  SUBCASE("random draws stay below 1e-10") {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int draw = 0; draw < 20; ++draw) {
      Complex sigma(u(rng), u(rng));
      while (std::abs(sigma) < 0.1) sigma = Complex(u(rng), u(rng));
      Complex tau(u(rng), u(rng));
      EtaIndependenceReport rep = eta_independence_check(phi, ctx, sigma, tau);
      CHECK(rep.operator_scaling_deviation <= 1e-10);
      CHECK(rep.reconstruction_deviation <= 1e-10);
    }
  }

  SUBCASE("sigma = 0 is rejected") {
    CHECK_THROWS_AS(eta_independence_check(phi, ctx, Complex(0.0), Complex(1.0)),
                    std::invalid_argument);
  }
}

TEST_CASE("flipping the sign of C changes no pipeline output") {
  const SpinorGridField& block = const_e_blocks()[0];

  ReductionContext ctx = lower_basis_context(kConstE);
  GammaRepresentation flipped_rep = ctx.rep;
  flipped_rep.c_matrix = -ctx.rep.c_matrix;
  ReductionContext flipped = ReductionContext::make(flipped_rep, ctx.basis, kConstE);

  ScalarGridField phi = extract_component(block, ctx);

  OneComponentResidual r1 = one_component_residual(phi, ctx);
  OneComponentResidual r2 = one_component_residual(phi, flipped);
  double dev = 0.0;
  for_each_interior(phi.grid, r1.residual.margin,
                    [&](long p, const std::array<int, 4>&) {
                      dev = std::max(dev, std::abs(r1.residual.values(p) -
                                                   r2.residual.values(p)));
                    });
  CHECK(dev <= 1e-14);

  ReconstructionResult rec1 = reconstruct_from_component(phi, ctx);
  ReconstructionResult rec2 = reconstruct_from_component(phi, flipped);
  CHECK(masked_spinor_diff(rec1.full, rec2.full, rec1.full.margin) <= 1e-14);
}

TEST_CASE("current from the component") {
  ReductionContext ctx = lower_basis_context(kConstE);

  SUBCASE("matches the current of the truth at order 2") {
    std::vector<std::pair<double, double>> errs;
    for (const auto& block : const_e_blocks()) {
      ScalarGridField phi = extract_component(block, ctx);
      ComponentCurrent from_phi = current_from_component(phi, ctx);
      CurrentFields truth = current(block, ctx.rep);
      double err = 0.0;
      for_each_interior(block.grid, from_phi.current.margin,
                        [&](long p, const std::array<int, 4>&) {
                          for (int mu = 0; mu < 4; ++mu)
                            err = std::max(err, std::abs(from_phi.current.j[mu](p) -
                                                         truth.j[mu](p)));
                        });
      errs.emplace_back(block.grid.spacing[0], err);
    }
    ConvergenceEstimate est = convergence_order(errs);
    CHECK(est.order > 1.8);
    CHECK(est.order < 2.2);
  }

  SUBCASE("zero component carries no current") {
    ComponentCurrent j =
        current_from_component(ScalarGridField::zeros(evolution_grid(12)), ctx);
    for (int mu = 0; mu < 4; ++mu) CHECK(j.current.j[mu].cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("discrete continuity of the reconstructed current at order 2") {
    std::vector<std::pair<double, double>> errs;
    for (const auto& block : const_e_blocks()) {
      ScalarGridField phi = extract_component(block, ctx);
      ComponentCurrent from_phi = current_from_component(phi, ctx);
      // pack j^mu into scalar fields and take the FD divergence
      ScalarGridField div = ScalarGridField::zeros(block.grid);
      div.margin = from_phi.current.margin;
      for (int mu = 0; mu < 2; ++mu) {  // active axes only
        ScalarGridField jmu = ScalarGridField::zeros(block.grid);
        jmu.margin = from_phi.current.margin;
        jmu.values = from_phi.current.j[mu];
        ScalarGridField d = derivative(jmu, mu, 1);
        div.values += d.values;
        div.margin = Margin::merged(div.margin, d.margin);
      }
      errs.emplace_back(block.grid.spacing[0], interior_max_norm(div));
    }
    ConvergenceEstimate est = convergence_order(errs);
    CHECK(est.order > 1.8);
    CHECK(est.order < 2.2);
  }
}

TEST_CASE("degenerate field detection: pure H3 with the published basis") {
  PotentialField pure_h = catalog("constant-H", {{"H", 1.0}});
  ReductionContext ctx = lower_basis_context(pure_h);
  Rng rng(71);
  SpacetimeGrid g = evolution_grid(16);
  ScalarGridField phi = random_trig_scalar(g, rng);

  // b = -i F^1 - F^2 = 0 identically for a pure H^3 field
  CoefficientGrids cg = coefficient_grids(ctx, g);
  CHECK(interior_max_norm(cg.b) <= 1e-14);

  CHECK_THROWS_AS(one_component_residual(phi, ctx), DegenerateFieldError);
  CHECK_THROWS_AS(reconstruct_eta_component(phi, ctx), DegenerateFieldError);
}

TEST_CASE("plane-wave coefficients: circular keeps |b| constant, linear masks") {
  SUBCASE("circular: full coverage and pointwise (iF3, -iF1-F2, -iF1+F2)") {
    PotentialField field = catalog("plane-wave");
    ReductionContext ctx = lower_basis_context(field);
    SpacetimeGrid g = evolution_grid(24);
    CoefficientGrids cg = coefficient_grids(ctx, g);
    const double amp = 0.5;  // catalog default amplitude * omega
    for (long p = 0; p < cg.b.values.size(); ++p) {
      CHECK(std::abs(std::abs(cg.b.values(p)) - amp) <= 1e-13);
      FieldTensor t = field_tensor(field, g.point(p));
      std::array<Complex, 3> fc;
      for (int i = 0; i < 3; ++i) fc[i] = Complex(t.e()(i), t.h()(i));
      CHECK(std::abs(cg.a.values(p) - kImag * fc[2]) <= 1e-14);
      CHECK(std::abs(cg.b.values(p) - (-kImag * fc[0] - fc[1])) <= 1e-14);
      CHECK(std::abs(cg.a_prime.values(p) - (-kImag * fc[0] + fc[1])) <= 1e-14);
    }
  }
  SUBCASE("linear polarization masks the phase lines but keeps coverage high") {
    ReductionContext ctx =
        lower_basis_context(catalog("plane-wave", {{"polarization", 1.0}}));
    Rng rng(5);
    // dt = dx puts the zeros of b ~ sin(t - x) exactly on grid diagonals
    SpacetimeGrid g = evolution_grid(144, 2.0 * M_PI);
    ScalarGridField phi = random_trig_scalar(g, rng);
    OneComponentResidual res = one_component_residual(phi, ctx);
    CHECK(res.coverage > 0.9);
    CHECK(res.coverage < 1.0);  // the theta = n pi lines are masked
  }
}

TEST_CASE("masks never shrink through the chain") {
  ReductionContext ctx = lower_basis_context(catalog("plane-wave", {{"polarization", 1.0}}));
  Rng rng(13);
  SpacetimeGrid g = evolution_grid(48);
  ScalarGridField phi = random_trig_scalar(g, rng);

  ReconstructedComponent eta = reconstruct_eta_component(phi, ctx);
  ReconstructionResult rec = reconstruct_from_component(phi, ctx);
  // every point valid after the full chain was valid at the earlier stage
  for (long p = 0; p < g.num_points(); ++p)
    if (rec.mask[p]) CHECK(eta.mask[p] == 1);
}
