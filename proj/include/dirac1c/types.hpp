#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <stdexcept>
#include <string>

namespace dirac1c {

using Complex = std::complex<double>;

using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Matrix4r = Eigen::Matrix4d;
using Vector4c = Eigen::Vector4cd;
using Vector4r = Eigen::Vector4d;
using Vector3r = Eigen::Vector3d;

/// Column 4-spinor.
using Spinor = Eigen::Vector4cd;
/// Row spinor, acts on Spinor by contraction.
using CoSpinor = Eigen::Matrix<Complex, 1, 4>;

/// Spinor samples on a grid, one column per grid point.
using SpinorBlock = Eigen::Matrix<Complex, 4, Eigen::Dynamic>;

inline constexpr Complex kImag{0.0, 1.0};

/// Signature (+1, -1, -1, -1); g = g^{-1}.
inline double metric_sign(int mu) { return mu == 0 ? 1.0 : -1.0; }

inline Matrix4r metric() {
  Matrix4r g = Matrix4r::Zero();
  for (int mu = 0; mu < 4; ++mu) g(mu, mu) = metric_sign(mu);
  return g;
}

/// Tolerance for identities that are exact linear algebra.
inline constexpr double kAlgebraTol = 1e-12;
/// Tolerance for checks that go through a matrix exponential.
inline constexpr double kExpTol = 1e-10;
/// Minimum |xiBar etaC| for a usable chiral basis.
inline constexpr double kIndependenceFloor = 1e-8;
/// Relative floor below which the coefficient b is treated as singular.
inline constexpr double kSingularityFloor = 1e-6;
/// Minimum unmasked fraction for a reduction run to count as valid.
inline constexpr double kCoverageFloor = 0.9;

/// Bad or inconsistent user-facing configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The field is degenerate for the chosen component: the coefficient b
/// (= xiBar F xiC up to a constant) vanishes everywhere, so the one-component
/// reduction does not exist (CLI exit code 3).
class DegenerateFieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dirac1c
