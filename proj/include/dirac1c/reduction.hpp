#pragma once

#include "dirac1c/gridops.hpp"

namespace dirac1c {

/// Everything the one-component pipelines need: a representation, a chiral
/// basis (xi, eta), the constant bilinear xiBar etaC, and the field.
struct ReductionContext {
  GammaRepresentation rep;
  ChiralBasis basis;
  Complex const_bilinear;
  PotentialField field;

  static ReductionContext make(GammaRepresentation rep, ChiralBasis basis,
                               PotentialField field);
};

/// Pointwise coefficient fields on a grid. a, b, a' are the ratio form;
/// p = xiBar F etaC, q = xiBar F xiC, r = etaBar F etaC are the raw bilinears
/// of the covariant operator form; k = xiBar etaC.
struct CoefficientGrids {
  ScalarGridField a, b, a_prime;
  ScalarGridField p, q, r;
  Complex k;
  double max_b_prime_deviation = 0.0;  // max |b' + a| over the grid
};

CoefficientGrids coefficient_grids(const ReductionContext& ctx,
                                   const SpacetimeGrid& grid);

/// xiBar psi, pointwise.
ScalarGridField extract_component(const SpinorGridField& psi,
                                  const ReductionContext& ctx);

struct OneComponentResidual {
  ScalarGridField residual;        // ((Box'-a) b^{-1} (Box'+a) - a') phi
  std::vector<std::uint8_t> mask;  // 1 = valid
  double coverage = 1.0;
  double max_norm = 0.0;           // interior max over unmasked points
  double dual_route_deviation = 0.0;  // ratio form vs covariant form, relative
};

/// Residual of the fourth-order one-component equation. Computed through the
/// ratio coefficients and, independently, through the covariant bilinear
/// form; the two routes are cross-checked.
OneComponentResidual one_component_residual(const ScalarGridField& phi,
                                            const ReductionContext& ctx);

/// Raw covariant operator
/// ((k Box' - p) q^{-1} (k Box' + p) + r) phi, no normalization. Scales by
/// (sigma*)^2 under eta -> sigma eta + tau xi.
MaskedScalarField covariant_operator_apply(const ScalarGridField& phi,
                                           const ReductionContext& ctx);

struct ReconstructedComponent {
  ScalarGridField field;
  std::vector<std::uint8_t> mask;
  double coverage = 1.0;
  double dual_route_deviation = 0.0;
};

/// etaBar psi = -b^{-1} (Box' + a) (xiBar psi); also computed through the
/// covariant form and cross-checked. Throws when coverage drops below 90%.
ReconstructedComponent reconstruct_eta_component(const ScalarGridField& phi,
                                                 const ReductionContext& ctx);

/// psi_chiral = ((xiBar psi) etaC - (etaBar psi) xiC) / (xiBar etaC);
/// a gamma5 eigenfield with eigenvalue -sign(basis). Pure algebra.
SpinorGridField reconstruct_chiral_part(const ScalarGridField& phi,
                                        const ScalarGridField& eta_phi,
                                        const ReductionContext& ctx);

/// The opposite chirality via the Dirac operator, then the sum.
SpinorGridField reconstruct_full(const SpinorGridField& psi_chiral_part,
                                 const ReductionContext& ctx);

struct ReconstructionResult {
  ScalarGridField eta_component;
  SpinorGridField chiral_part;
  SpinorGridField full;
  std::vector<std::uint8_t> mask;  // valid points of `full`
  double coverage = 1.0;
};

/// Full chain component -> spinor. Uses derivatives of phi of order <= 3
/// (two in the eta component, one more in the Dirac step).
ReconstructionResult reconstruct_from_component(const ScalarGridField& phi,
                                                const ReductionContext& ctx);

struct EtaIndependenceReport {
  double operator_scaling_deviation = 0.0;   // vs (sigma*)^2, relative
  double reconstruction_deviation = 0.0;     // chiral part, relative
};

/// Substitutes eta' = sigma eta + tau xi and verifies that the covariant
/// operator picks up exactly (sigma*)^2 and that the reconstructed chiral
/// part is unchanged.
EtaIndependenceReport eta_independence_check(const ScalarGridField& phi,
                                             const ReductionContext& ctx,
                                             Complex sigma, Complex tau);

struct ComponentCurrent {
  CurrentFields current;
  std::vector<std::uint8_t> mask;
  double coverage = 1.0;
};

/// j^mu evaluated on the spinor reconstructed from the component; involves
/// derivatives of phi of order at most three.
ComponentCurrent current_from_component(const ScalarGridField& phi,
                                        const ReductionContext& ctx);

}  // namespace dirac1c
