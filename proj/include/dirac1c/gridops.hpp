#pragma once

#include <vector>

#include "dirac1c/emfield.hpp"
#include "dirac1c/grid.hpp"

namespace dirac1c {

/// Second-order central stencil along `axis`; order 1 or 2. Periodic axes
/// wrap, trim axes grow the margin by one layer. Axes of extent 1 yield a
/// zero derivative (dimensional reduction).
ScalarGridField derivative(const ScalarGridField& field, int axis, int order);
SpinorGridField derivative(const SpinorGridField& field, int axis, int order);

/// (i gamma^mu d_mu - A_mu gamma^mu) psi. The Dirac residual is this minus psi.
SpinorGridField dirac_apply(const SpinorGridField& psi, const PotentialField& field,
                            const GammaRepresentation& rep);

SpinorGridField dirac_residual(const SpinorGridField& psi, const PotentialField& field,
                               const GammaRepresentation& rep);

/// Box' u = (d^mu d_mu + 2i A^mu d_mu + i A^mu_{,mu} - A^mu A_mu + 1) u,
/// with the A-terms evaluated analytically pointwise.
ScalarGridField box_prime_apply(const ScalarGridField& u, const PotentialField& field);
SpinorGridField box_prime_apply(const SpinorGridField& u, const PotentialField& field);

/// Pointwise max-norm of (i dslash - Aslash)^2 phi - phi + (Box' + F) phi.
/// An operator identity: converges to zero for arbitrary smooth phi.
ScalarGridField squared_identity_residual(const SpinorGridField& phi,
                                          const PotentialField& field,
                                          const GammaRepresentation& rep);

struct MaskedScalarField {
  ScalarGridField field;
  std::vector<std::uint8_t> mask;  // 1 = valid
  double coverage = 1.0;

  double max_norm() const { return interior_max_norm(field, &mask); }
};

/// ((alpha Box' - u) d^{-1} (alpha Box' + u) + w) phi with pointwise
/// coefficient fields. Points with |d| below floor_abs are masked, and the
/// mask spreads to every point whose outer stencil touches a masked point.
/// Throws DegenerateFieldError when nothing survives.
MaskedScalarField fourth_order_apply(const ScalarGridField& phi, Complex alpha,
                                     const ScalarGridField& u,
                                     const ScalarGridField& d,
                                     const ScalarGridField& w,
                                     const PotentialField& field,
                                     double floor_abs);

struct CurrentFields {
  SpacetimeGrid grid;
  Margin margin;
  std::array<Eigen::VectorXd, 4> j;
};

/// j^mu = psiBar gamma^mu psi per point.
CurrentFields current(const SpinorGridField& psi, const GammaRepresentation& rep);

/// The two chirality contributions; their sum reproduces current().
std::pair<CurrentFields, CurrentFields> current_chiral_split(
    const SpinorGridField& psi, const GammaRepresentation& rep);

struct ConvergenceEstimate {
  double order = 0.0;
  bool monotone = true;  // false flags a non-decreasing norm sequence
};

/// Least-squares slope of log(norm) against log(h); needs >= 3 levels.
ConvergenceEstimate convergence_order(
    const std::vector<std::pair<double, double>>& h_and_norm);

}  // namespace dirac1c
