#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "dirac1c/clifford.hpp"
#include "dirac1c/types.hpp"

namespace dirac1c {

using FieldParams = std::map<std::string, double>;

/// Analytic electromagnetic potential. Covariant components A_mu are stored;
/// indices are raised with the fixed metric on demand. Exact first partials
/// come with the field so that grid operators never differentiate A
/// numerically.
struct PotentialField {
  std::string name;
  FieldParams params;
  std::string gauge_note;
  /// A_mu(x), covariant.
  std::function<Vector4r(const Vector4r&)> a;
  /// d(mu, nu) = dA_mu / dx^nu, exact.
  std::function<Matrix4r(const Vector4r&)> da;
};

/// Known names: zero, constant-E, constant-H, crossed-constant, plane-wave,
/// polynomial-test. Unknown parameter keys are rejected.
PotentialField catalog(const std::string& name, const FieldParams& params = {});
std::vector<std::string> catalog_names();
/// Human-readable formulas and gauge notes for `fields describe`.
std::string describe_field(const std::string& name);

/// F^{mu nu} at a point, exactly antisymmetric. E and H are read through the
/// layout F^{0i} = -E^i, F^{12} = -H^3, F^{13} = H^2, F^{23} = -H^1.
struct FieldTensor {
  Matrix4r f_upup = Matrix4r::Zero();

  Vector3r e() const {
    return Vector3r(-f_upup(0, 1), -f_upup(0, 2), -f_upup(0, 3));
  }
  Vector3r h() const {
    return Vector3r(-f_upup(2, 3), f_upup(1, 3), -f_upup(1, 2));
  }
  static FieldTensor from_e_h(const Vector3r& e, const Vector3r& h);
};

FieldTensor field_tensor(const PotentialField& field, const Vector4r& x);

/// The spinor-space field matrix F = (1/2) F_{nu mu} sigma^{nu mu}.
Matrix4c field_matrix(const FieldTensor& tensor, const GammaRepresentation& rep);

Matrix4c field_matrix_at(const PotentialField& field, const Vector4r& x,
                         const GammaRepresentation& rep);

/// A^mu_{,mu} with the raised index.
double divergence_a(const PotentialField& field, const Vector4r& x);

}  // namespace dirac1c
