#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dirac1c/types.hpp"

namespace dirac1c {

/// A set of gamma matrices together with gamma5 and the charge-conjugation
/// matrix C. All pipelines are representation-agnostic; representations are
/// validated against the Clifford relation, the hermiticity conditions
/// gamma^mu+ = gamma^0 gamma^mu gamma^0, and the C-matrix identities
/// C gamma^mu C^-1 = -gamma^mu^T, C^T = C+ = -C, C^2 = -I.
struct GammaRepresentation {
  std::string name;
  std::array<Matrix4c, 4> gamma;
  Matrix4c gamma5;
  Matrix4c c_matrix;
};

struct ValidationCheck {
  std::string name;
  double deviation = 0.0;
  double tolerance = kAlgebraTol;
  bool pass() const { return deviation <= tolerance; }
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool pass() const;
  double max_deviation() const;
};

/// Known names: "chiral", "dirac-standard", "majorana".
GammaRepresentation builtin_representation(const std::string& name);
std::vector<std::string> builtin_representation_names();

ValidationReport validate_representation(const GammaRepresentation& rep);

/// sigma^{mu nu} = (i/2) [gamma^mu, gamma^nu], indices up.
Matrix4c build_sigma(const GammaRepresentation& rep, int mu, int nu);

/// Solves C gamma^mu + gamma^mu^T C = 0 for the one-dimensional null space,
/// normalizes to unitarity, fixes the phase so C^2 = -I, and picks the sign
/// whose first nonzero entry (row-major scan) has argument in (-pi/2, pi/2].
/// Rejects gamma sets whose null space is not one-dimensional or for which
/// no sign achieves C^2 = -I.
Matrix4c find_charge_conjugation(const std::array<Matrix4c, 4>& gamma);

/// chi+ gamma^0
CoSpinor dirac_adjoint(const Spinor& chi, const GammaRepresentation& rep);

/// chi^c = C (chiBar)^T
Spinor charge_conjugate(const Spinor& chi, const GammaRepresentation& rep);

/// (1/2)(1 + s gamma5) psi, s in {+1, -1}
Spinor chiral_project(const Spinor& psi, int s, const GammaRepresentation& rep);

/// xiBar etaC, the constant bilinear pairing two spinors through C.
Complex pair_bilinear(const Spinor& xi, const Spinor& eta,
                      const GammaRepresentation& rep);

/// xiBar F etaC for a spinor-space matrix F.
Complex field_bilinear(const Spinor& xi, const Matrix4c& f, const Spinor& eta,
                       const GammaRepresentation& rep);

/// Two independent gamma5 eigenspinors sharing the eigenvalue `sign`.
struct ChiralBasis {
  Spinor xi;
  Spinor eta;
  int sign = -1;
};

/// Default construction projects the standard basis vectors with
/// (1/2)(1 + s gamma5) and orthonormalizes in scan order; the first two
/// surviving vectors become xi and eta. An override pair is accepted if both
/// spinors are gamma5 eigenvectors with eigenvalue s and |xiBar etaC| is
/// above the independence floor.
ChiralBasis make_chiral_basis(
    const GammaRepresentation& rep, int s,
    std::optional<std::pair<Spinor, Spinor>> override_pair = std::nullopt);

/// Pointwise values of the coefficient fields a, b, a', b'. b' is computed
/// from its own bilinear and must agree with -a.
struct CoefficientQuadruple {
  Complex a;
  Complex b;
  Complex a_prime;
  Complex b_prime;
};

CoefficientQuadruple coefficient_quadruple(const ChiralBasis& basis,
                                           const Matrix4c& f_matrix,
                                           const GammaRepresentation& rep);

/// Lambda = exp(-(i/4) omega_{mu nu} sigma^{mu nu}) for antisymmetric
/// covariant parameters omega. Commutes with gamma5 for proper transforms.
Matrix4c lorentz_spinor_map(const Matrix4r& omega, const GammaRepresentation& rep);

/// Scaling-and-squaring matrix exponential with a truncated-series core.
Matrix4c matrix_exponential(const Matrix4c& x);

}  // namespace dirac1c
