#include "dirac1c/reduction.hpp"

#include <cmath>

namespace dirac1c {

namespace {

double singularity_floor(const ScalarGridField& b) {
  return kSingularityFloor * interior_max_norm(b);
}

// Relative max deviation between two fields over the joint valid set,
// normalized by the larger field scale.
double masked_relative_deviation(const ScalarGridField& lhs, const ScalarGridField& rhs,
                                 const Margin& margin,
                                 const std::vector<std::uint8_t>* mask) {
  double dev = 0.0, scale = 0.0;
  for_each_interior(lhs.grid, margin, [&](long p, const std::array<int, 4>&) {
    if (mask && !(*mask)[p]) return;
    dev = std::max(dev, std::abs(lhs.values(p) - rhs.values(p)));
    scale = std::max({scale, std::abs(lhs.values(p)), std::abs(rhs.values(p))});
  });
  return scale > 0.0 ? dev / scale : dev;
}

}  // namespace

ReductionContext ReductionContext::make(GammaRepresentation rep, ChiralBasis basis,
                                        PotentialField field) {
  ReductionContext ctx{std::move(rep), std::move(basis), Complex(0), std::move(field)};
  ctx.const_bilinear = pair_bilinear(ctx.basis.xi, ctx.basis.eta, ctx.rep);
  if (std::abs(ctx.const_bilinear) < kIndependenceFloor)
    throw std::invalid_argument("|xiBar etaC| below the independence floor");
  return ctx;
}

CoefficientGrids coefficient_grids(const ReductionContext& ctx,
                                   const SpacetimeGrid& grid) {
  grid.validate();
  CoefficientGrids out{ScalarGridField::zeros(grid), ScalarGridField::zeros(grid),
                       ScalarGridField::zeros(grid), ScalarGridField::zeros(grid),
                       ScalarGridField::zeros(grid), ScalarGridField::zeros(grid),
                       ctx.const_bilinear};

  const CoSpinor xi_bar = dirac_adjoint(ctx.basis.xi, ctx.rep);
  const CoSpinor eta_bar = dirac_adjoint(ctx.basis.eta, ctx.rep);
  const Spinor xi_c = charge_conjugate(ctx.basis.xi, ctx.rep);
  const Spinor eta_c = charge_conjugate(ctx.basis.eta, ctx.rep);
  const Complex k = ctx.const_bilinear;
  const Complex k_rev = eta_bar * xi_c;

  for (long pt = 0; pt < grid.num_points(); ++pt) {
    const Matrix4c f = field_matrix_at(ctx.field, grid.point(pt), ctx.rep);
    const Complex p = xi_bar * f * eta_c;
    const Complex q = xi_bar * f * xi_c;
    const Complex r = eta_bar * f * eta_c;
    const Complex b_prime_num = eta_bar * f * xi_c;
    out.p.values(pt) = p;
    out.q.values(pt) = q;
    out.r.values(pt) = r;
    out.a.values(pt) = p / k;
    out.b.values(pt) = q / k_rev;
    out.a_prime.values(pt) = r / k;
    out.max_b_prime_deviation = std::max(
        out.max_b_prime_deviation, std::abs(b_prime_num / k_rev + out.a.values(pt)));
  }
  return out;
}

ScalarGridField extract_component(const SpinorGridField& psi,
                                  const ReductionContext& ctx) {
  const CoSpinor xi_bar = dirac_adjoint(ctx.basis.xi, ctx.rep);
  ScalarGridField out = ScalarGridField::zeros(psi.grid);
  out.margin = psi.margin;
  out.values = (xi_bar * psi.values).transpose();
  return out;
}

OneComponentResidual one_component_residual(const ScalarGridField& phi,
                                            const ReductionContext& ctx) {
  const CoefficientGrids cg = coefficient_grids(ctx, phi.grid);
  const double floor_b = singularity_floor(cg.b);

  ScalarGridField minus_a_prime = cg.a_prime;
  minus_a_prime.values = -minus_a_prime.values;
  MaskedScalarField ratio_form = fourth_order_apply(
      phi, Complex(1.0), cg.a, cg.b, minus_a_prime, ctx.field, floor_b);

  const double floor_q = kSingularityFloor * interior_max_norm(cg.q);
  MaskedScalarField covariant_form = fourth_order_apply(
      phi, cg.k, cg.p, cg.q, cg.r, ctx.field, floor_q);
  covariant_form.field.values /= -cg.k;

  OneComponentResidual out;
  out.residual = ratio_form.field;
  out.mask = ratio_form.mask;
  out.coverage = ratio_form.coverage;
  out.max_norm = ratio_form.max_norm();

  // The two algebraic routes must agree relative to the operator scale.
  std::vector<std::uint8_t> joint = ratio_form.mask;
  for (size_t i = 0; i < joint.size(); ++i) joint[i] &= covariant_form.mask[i];
  double dev = 0.0;
  double scale = std::max(1e-300, interior_max_norm(phi));
  ScalarGridField boxed = box_prime_apply(phi, ctx.field);
  scale = std::max(scale, interior_max_norm(boxed) * std::abs(cg.k));
  for_each_interior(phi.grid, out.residual.margin,
                    [&](long p, const std::array<int, 4>&) {
                      if (!joint[p]) return;
                      dev = std::max(dev, std::abs(out.residual.values(p) -
                                                   covariant_form.field.values(p)));
                    });
  out.dual_route_deviation = dev / scale;
  return out;
}

MaskedScalarField covariant_operator_apply(const ScalarGridField& phi,
                                           const ReductionContext& ctx) {
  const CoefficientGrids cg = coefficient_grids(ctx, phi.grid);
  const double floor_q = kSingularityFloor * interior_max_norm(cg.q);
  return fourth_order_apply(phi, cg.k, cg.p, cg.q, cg.r, ctx.field, floor_q);
}

ReconstructedComponent reconstruct_eta_component(const ScalarGridField& phi,
                                                 const ReductionContext& ctx) {
  const CoefficientGrids cg = coefficient_grids(ctx, phi.grid);
  const ScalarGridField boxed = box_prime_apply(phi, ctx.field);
  const double floor_b = singularity_floor(cg.b);
  const double floor_q = kSingularityFloor * interior_max_norm(cg.q);

  ReconstructedComponent out;
  out.field = ScalarGridField::zeros(phi.grid);
  out.field.margin = boxed.margin;
  out.mask.assign(size_t(phi.grid.num_points()), 0);

  ScalarGridField alt = ScalarGridField::zeros(phi.grid);
  for (long p = 0; p < phi.grid.num_points(); ++p) {
    if (std::abs(cg.b.values(p)) >= floor_b && floor_b > 0.0) {
      out.mask[p] = 1;
      out.field.values(p) =
          -(boxed.values(p) + cg.a.values(p) * phi.values(p)) / cg.b.values(p);
    }
    if (std::abs(cg.q.values(p)) >= floor_q && floor_q > 0.0)
      alt.values(p) = (cg.k * boxed.values(p) + cg.p.values(p) * phi.values(p)) /
                      cg.q.values(p);
  }

  const long interior = count_interior(phi.grid, out.field.margin);
  if (interior <= 0)
    throw std::runtime_error("insufficient margin to reconstruct the eta component");
  long kept = 0;
  for_each_interior(phi.grid, out.field.margin,
                    [&](long p, const std::array<int, 4>&) { kept += out.mask[p]; });
  out.coverage = double(kept) / double(interior);
  if (kept == 0)
    throw DegenerateFieldError(
        "degenerate field for this component: xiBar F xiC vanishes everywhere");
  if (out.coverage < kCoverageFloor)
    throw DegenerateFieldError(
        "unmasked coverage " + std::to_string(out.coverage) +
        " below the 90% floor; the coefficient b is too close to singular");

  out.dual_route_deviation =
      masked_relative_deviation(out.field, alt, out.field.margin, &out.mask);
  return out;
}

SpinorGridField reconstruct_chiral_part(const ScalarGridField& phi,
                                        const ScalarGridField& eta_phi,
                                        const ReductionContext& ctx) {
  const Spinor xi_c = charge_conjugate(ctx.basis.xi, ctx.rep);
  const Spinor eta_c = charge_conjugate(ctx.basis.eta, ctx.rep);
  SpinorGridField out = SpinorGridField::zeros(phi.grid);
  out.margin = Margin::merged(phi.margin, eta_phi.margin);
  out.values = (eta_c * phi.values.transpose() - xi_c * eta_phi.values.transpose()) /
               ctx.const_bilinear;
  return out;
}

SpinorGridField reconstruct_full(const SpinorGridField& psi_chiral_part,
                                 const ReductionContext& ctx) {
  SpinorGridField other = dirac_apply(psi_chiral_part, ctx.field, ctx.rep);
  other.values += psi_chiral_part.values;
  return other;
}

ReconstructionResult reconstruct_from_component(const ScalarGridField& phi,
                                                const ReductionContext& ctx) {
  ReconstructionResult out;
  ReconstructedComponent eta = reconstruct_eta_component(phi, ctx);
  out.eta_component = eta.field;
  out.chiral_part = reconstruct_chiral_part(phi, eta.field, ctx);
  out.full = reconstruct_full(out.chiral_part, ctx);
  out.mask = erode_mask(phi.grid, eta.mask, 1);
  long interior = count_interior(phi.grid, out.full.margin);
  long kept = 0;
  for_each_interior(phi.grid, out.full.margin,
                    [&](long p, const std::array<int, 4>&) { kept += out.mask[p]; });
  out.coverage = interior > 0 ? double(kept) / double(interior) : 0.0;
  return out;
}

EtaIndependenceReport eta_independence_check(const ScalarGridField& phi,
                                             const ReductionContext& ctx,
                                             Complex sigma, Complex tau) {
  if (sigma == Complex(0))
    throw std::invalid_argument("sigma must be nonzero (eta' must stay independent)");

  ChiralBasis primed = ctx.basis;
  primed.eta = sigma * ctx.basis.eta + tau * ctx.basis.xi;
  ReductionContext ctx_primed =
      ReductionContext::make(ctx.rep, primed, ctx.field);

  EtaIndependenceReport report;
  const Complex factor = std::conj(sigma) * std::conj(sigma);

  {
    MaskedScalarField base = covariant_operator_apply(phi, ctx);
    MaskedScalarField primed_op = covariant_operator_apply(phi, ctx_primed);
    std::vector<std::uint8_t> joint = base.mask;
    for (size_t i = 0; i < joint.size(); ++i) joint[i] &= primed_op.mask[i];
    double dev = 0.0, scale = 0.0;
    for_each_interior(phi.grid, base.field.margin,
                      [&](long p, const std::array<int, 4>&) {
                        if (!joint[p]) return;
                        Complex expect = factor * base.field.values(p);
                        dev = std::max(dev,
                                       std::abs(primed_op.field.values(p) - expect));
                        scale = std::max({scale, std::abs(expect),
                                          std::abs(primed_op.field.values(p))});
                      });
    report.operator_scaling_deviation = scale > 0.0 ? dev / scale : dev;
  }

  {
    ReconstructionResult base = reconstruct_from_component(phi, ctx);
    ReconstructionResult primed_rec = reconstruct_from_component(phi, ctx_primed);
    std::vector<std::uint8_t> joint = base.mask;
    for (size_t i = 0; i < joint.size(); ++i) joint[i] &= primed_rec.mask[i];
    double dev = 0.0, scale = 0.0;
    for_each_interior(phi.grid, base.chiral_part.margin,
                      [&](long p, const std::array<int, 4>&) {
                        if (!joint[p]) return;
                        dev = std::max(dev, (base.chiral_part.values.col(p) -
                                             primed_rec.chiral_part.values.col(p))
                                                .cwiseAbs()
                                                .maxCoeff());
                        scale = std::max(
                            scale, base.chiral_part.values.col(p).cwiseAbs().maxCoeff());
                      });
    report.reconstruction_deviation = scale > 0.0 ? dev / scale : dev;
  }
  return report;
}

ComponentCurrent current_from_component(const ScalarGridField& phi,
                                        const ReductionContext& ctx) {
  ReconstructionResult rec = reconstruct_from_component(phi, ctx);
  ComponentCurrent out;
  out.current = current(rec.full, ctx.rep);
  out.mask = rec.mask;
  out.coverage = rec.coverage;
  return out;
}

}  // namespace dirac1c
