#include "dirac1c/clifford.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace dirac1c {

namespace {

Matrix2c pauli(int i) {
  Matrix2c s;
  switch (i) {
    case 1:
      s << 0, 1, 1, 0;
      break;
    case 2:
      s << 0, Complex(0, -1), Complex(0, 1), 0;
      break;
    case 3:
      s << 1, 0, 0, -1;
      break;
    default:
      s.setIdentity();
  }
  return s;
}

Matrix4c blocks(const Matrix2c& tl, const Matrix2c& tr, const Matrix2c& bl,
                const Matrix2c& br) {
  Matrix4c m;
  m.block<2, 2>(0, 0) = tl;
  m.block<2, 2>(0, 2) = tr;
  m.block<2, 2>(2, 0) = bl;
  m.block<2, 2>(2, 2) = br;
  return m;
}

const Matrix2c kI2 = Matrix2c::Identity();
const Matrix2c kZ2 = Matrix2c::Zero();

GammaRepresentation chiral_representation() {
  GammaRepresentation rep;
  rep.name = "chiral";
  rep.gamma[0] = blocks(kZ2, -kI2, -kI2, kZ2);
  for (int i = 1; i <= 3; ++i)
    rep.gamma[i] = blocks(kZ2, pauli(i), -pauli(i), kZ2);
  rep.gamma5 = blocks(kI2, kZ2, kZ2, -kI2);
  rep.c_matrix = blocks(-kImag * pauli(2), kZ2, kZ2, kImag * pauli(2));
  return rep;
}

GammaRepresentation dirac_standard_representation() {
  GammaRepresentation rep;
  rep.name = "dirac-standard";
  rep.gamma[0] = blocks(kI2, kZ2, kZ2, -kI2);
  for (int i = 1; i <= 3; ++i)
    rep.gamma[i] = blocks(kZ2, pauli(i), -pauli(i), kZ2);
  rep.gamma5 = blocks(kZ2, kI2, kI2, kZ2);
  rep.c_matrix = find_charge_conjugation(rep.gamma);
  return rep;
}

// Purely imaginary gamma set; exercises a C matrix with a different
// structure than the block-diagonal chiral one.
GammaRepresentation majorana_representation() {
  GammaRepresentation rep;
  rep.name = "majorana";
  rep.gamma[0] = blocks(kZ2, pauli(2), pauli(2), kZ2);
  rep.gamma[1] = blocks(kImag * pauli(3), kZ2, kZ2, kImag * pauli(3));
  rep.gamma[2] = blocks(kZ2, -pauli(2), pauli(2), kZ2);
  rep.gamma[3] = blocks(-kImag * pauli(1), kZ2, kZ2, -kImag * pauli(1));
  rep.gamma5 = blocks(pauli(2), kZ2, kZ2, -pauli(2));
  rep.c_matrix = find_charge_conjugation(rep.gamma);
  return rep;
}

double max_abs(const Matrix4c& m) { return m.cwiseAbs().maxCoeff(); }

// Kronecker product for the 16x16 vectorized C constraints.
Eigen::MatrixXcd kron4(const Matrix4c& a, const Matrix4c& b) {
  Eigen::MatrixXcd out(16, 16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.block<4, 4>(4 * i, 4 * j) = a(i, j) * b;
  return out;
}

}  // namespace

bool ValidationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ValidationCheck& c) { return c.pass(); });
}

double ValidationReport::max_deviation() const {
  double m = 0.0;
  for (const auto& c : checks) m = std::max(m, c.deviation);
  return m;
}

GammaRepresentation builtin_representation(const std::string& name) {
  if (name == "chiral") return chiral_representation();
  if (name == "dirac-standard") return dirac_standard_representation();
  if (name == "majorana") return majorana_representation();
  std::ostringstream msg;
  msg << "unknown representation '" << name << "'; known:";
  for (const auto& n : builtin_representation_names()) msg << " " << n;
  throw ConfigError(msg.str());
}

std::vector<std::string> builtin_representation_names() {
  return {"chiral", "dirac-standard", "majorana"};
}

ValidationReport validate_representation(const GammaRepresentation& rep) {
  ValidationReport report;
  const Matrix4c id = Matrix4c::Identity();
  auto add = [&report](const std::string& name, double dev) {
    report.checks.push_back({name, dev, kAlgebraTol});
  };

  double clifford = 0.0;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      Matrix4c anti = rep.gamma[mu] * rep.gamma[nu] + rep.gamma[nu] * rep.gamma[mu];
      double target = mu == nu ? 2.0 * metric_sign(mu) : 0.0;
      clifford = std::max(clifford, max_abs(anti - target * id));
    }
  add("clifford relation", clifford);

  double herm = 0.0;
  for (int mu = 0; mu < 4; ++mu)
    herm = std::max(herm, max_abs(rep.gamma[mu].adjoint() -
                                  rep.gamma[0] * rep.gamma[mu] * rep.gamma[0]));
  add("gamma hermiticity", herm);
  add("gamma5 hermiticity", max_abs(rep.gamma5.adjoint() - rep.gamma5));

  double anti5 = 0.0;
  for (int mu = 0; mu < 4; ++mu)
    anti5 = std::max(anti5,
                     max_abs(rep.gamma5 * rep.gamma[mu] + rep.gamma[mu] * rep.gamma5));
  add("gamma5 anticommutation", anti5);
  add("gamma5 squared", max_abs(rep.gamma5 * rep.gamma5 - id));

  const Matrix4c& c = rep.c_matrix;
  const Matrix4c c_inv = -c;  // C^2 = -I
  double cg = 0.0;
  for (int mu = 0; mu < 4; ++mu)
    cg = std::max(cg, max_abs(c * rep.gamma[mu] * c_inv +
                              rep.gamma[mu].transpose()));
  add("C gamma intertwine", cg);
  add("C gamma5 intertwine", max_abs(c * rep.gamma5 * c_inv - rep.gamma5.transpose()));

  double cs = 0.0;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = mu + 1; nu < 4; ++nu) {
      Matrix4c sig = build_sigma(rep, mu, nu);
      cs = std::max(cs, max_abs(c * sig * c_inv + sig.transpose()));
    }
  add("C sigma intertwine", cs);
  add("C transpose = -C", max_abs(c.transpose() + c));
  add("C adjoint = -C", max_abs(c.adjoint() + c));
  add("C unitary", max_abs(c * c.adjoint() - id));
  add("C squared = -I", max_abs(c * c + id));

  double s5 = 0.0;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      Matrix4c sig = build_sigma(rep, mu, nu);
      s5 = std::max(s5, max_abs(rep.gamma5 * sig - sig * rep.gamma5));
    }
  add("gamma5 commutes with sigma", s5);

  return report;
}

Matrix4c build_sigma(const GammaRepresentation& rep, int mu, int nu) {
  if (mu < 0 || mu > 3 || nu < 0 || nu > 3)
    throw std::out_of_range("sigma index out of range");
  return Complex(0, 0.5) *
         (rep.gamma[mu] * rep.gamma[nu] - rep.gamma[nu] * rep.gamma[mu]);
}

Matrix4c find_charge_conjugation(const std::array<Matrix4c, 4>& gamma) {
  const Matrix4c id4 = Matrix4c::Identity();
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      Matrix4c anti = gamma[mu] * gamma[nu] + gamma[nu] * gamma[mu];
      double target = mu == nu ? 2.0 * metric_sign(mu) : 0.0;
      if (max_abs(anti - target * id4) > kAlgebraTol)
        throw std::runtime_error(
            "gamma set fails the Clifford relation; refusing to search for C");
    }
    if (max_abs(gamma[mu].adjoint() - gamma[0] * gamma[mu] * gamma[0]) > kAlgebraTol)
      throw std::runtime_error(
          "gamma set fails the hermiticity conditions; refusing to search for C");
  }

  // Stack vec(C gamma^mu + gamma^mu^T C) = 0 over mu; column-major vec.
  Eigen::MatrixXcd system(64, 16);
  const Matrix4c id = Matrix4c::Identity();
  for (int mu = 0; mu < 4; ++mu) {
    Matrix4c gt = gamma[mu].transpose();
    system.block<16, 16>(16 * mu, 0) = kron4(gt, id) + kron4(id, gt);
  }

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(system, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double tol = 1e-10 * sv(0);
  int null_dim = 0;
  for (int i = 0; i < 16; ++i)
    if (sv(i) < tol) ++null_dim;
  if (null_dim != 1) {
    std::ostringstream msg;
    msg << "charge-conjugation null space has dimension " << null_dim
        << " (expected 1); representation rejected";
    throw std::runtime_error(msg.str());
  }

  Eigen::VectorXcd v = svd.matrixV().col(15);
  Matrix4c c;
  for (int col = 0; col < 4; ++col)
    for (int row = 0; row < 4; ++row) c(row, col) = v(4 * col + row);

  // Scale to unitarity: any solution is a scalar multiple of a unitary one.
  double s = std::sqrt((c * c.adjoint()).trace().real() / 4.0);
  c /= s;
  if (max_abs(c * c.adjoint() - id) > 1e-10)
    throw std::runtime_error(
        "charge-conjugation candidate cannot be normalized to unitarity");

  // C^2 is a unimodular scalar; rotate the phase so C^2 = -I.
  Matrix4c c2 = c * c;
  Complex lambda = c2(0, 0);
  if (max_abs(c2 - lambda * id) > 1e-10 || std::abs(std::abs(lambda) - 1.0) > 1e-10)
    throw std::runtime_error("C^2 is not a unimodular scalar; no sign choice "
                             "achieves C^2 = -I");
  Complex phase = std::sqrt(-1.0 / lambda);
  c *= phase;

  // Residual sign: first nonzero entry in row-major scan must have argument
  // in (-pi/2, pi/2]; otherwise take the other candidate.
  auto sign_ok = [](const Matrix4c& m) {
    for (int row = 0; row < 4; ++row)
      for (int col = 0; col < 4; ++col) {
        if (std::abs(m(row, col)) > 1e-9) {
          double arg = std::arg(m(row, col));
          return arg > -M_PI_2 && arg <= M_PI_2;
        }
      }
    return false;
  };
  if (!sign_ok(c)) c = -c;

  if (max_abs(c * c + id) > kAlgebraTol)
    throw std::runtime_error("no sign choice achieves C^2 = -I");
  return c;
}

CoSpinor dirac_adjoint(const Spinor& chi, const GammaRepresentation& rep) {
  return chi.adjoint() * rep.gamma[0];
}

Spinor charge_conjugate(const Spinor& chi, const GammaRepresentation& rep) {
  return rep.c_matrix * dirac_adjoint(chi, rep).transpose();
}

Spinor chiral_project(const Spinor& psi, int s, const GammaRepresentation& rep) {
  if (s != 1 && s != -1)
    throw std::invalid_argument("chirality sign must be +1 or -1");
  return 0.5 * (psi + double(s) * (rep.gamma5 * psi));
}

Complex pair_bilinear(const Spinor& xi, const Spinor& eta,
                      const GammaRepresentation& rep) {
  return dirac_adjoint(xi, rep) * charge_conjugate(eta, rep);
}

Complex field_bilinear(const Spinor& xi, const Matrix4c& f, const Spinor& eta,
                       const GammaRepresentation& rep) {
  return dirac_adjoint(xi, rep) * f * charge_conjugate(eta, rep);
}

ChiralBasis make_chiral_basis(const GammaRepresentation& rep, int s,
                              std::optional<std::pair<Spinor, Spinor>> override_pair) {
  if (s != 1 && s != -1)
    throw std::invalid_argument("chirality sign must be +1 or -1");

  ChiralBasis basis;
  basis.sign = s;

  if (override_pair) {
    const Spinor& xi = override_pair->first;
    const Spinor& eta = override_pair->second;
    auto eig_dev = [&](const Spinor& v) {
      return (rep.gamma5 * v - double(s) * v).cwiseAbs().maxCoeff();
    };
    if (eig_dev(xi) > kAlgebraTol)
      throw std::invalid_argument(
          "override rejected: xi is not a gamma5 eigenvector with the requested sign");
    if (eig_dev(eta) > kAlgebraTol)
      throw std::invalid_argument(
          "override rejected: eta is not a gamma5 eigenvector with the requested sign");
    basis.xi = xi;
    basis.eta = eta;
  } else {
    std::vector<Spinor> kept;
    for (int i = 0; i < 4 && kept.size() < 2; ++i) {
      Spinor v = chiral_project(Spinor::Unit(i), s, rep);
      for (const Spinor& u : kept) v -= (u.dot(v)) * u;
      double n = v.norm();
      if (n > 1e-10) kept.push_back(v / n);
    }
    if (kept.size() < 2)
      throw std::runtime_error("gamma5 eigenspace appears to be deficient");
    basis.xi = kept[0];
    basis.eta = kept[1];
  }

  if (std::abs(pair_bilinear(basis.xi, basis.eta, rep)) < kIndependenceFloor)
    throw std::invalid_argument(
        "override rejected: |xiBar etaC| below the independence floor "
        "(spinors not independent)");
  return basis;
}

CoefficientQuadruple coefficient_quadruple(const ChiralBasis& basis,
                                           const Matrix4c& f_matrix,
                                           const GammaRepresentation& rep) {
  const Complex k = pair_bilinear(basis.xi, basis.eta, rep);
  if (std::abs(k) < kIndependenceFloor)
    throw std::invalid_argument("|xiBar etaC| below the independence floor");
  const Complex k_rev = pair_bilinear(basis.eta, basis.xi, rep);

  CoefficientQuadruple q;
  q.a = field_bilinear(basis.xi, f_matrix, basis.eta, rep) / k;
  q.b = field_bilinear(basis.xi, f_matrix, basis.xi, rep) / k_rev;
  q.a_prime = field_bilinear(basis.eta, f_matrix, basis.eta, rep) / k;
  q.b_prime = field_bilinear(basis.eta, f_matrix, basis.xi, rep) / k_rev;

  double scale = std::max({1.0, std::abs(q.a), std::abs(q.b)});
  if (std::abs(q.b_prime + q.a) > 1e-10 * scale)
    throw std::runtime_error("b' = -a violated; F is not a valid field matrix "
                             "for this representation");
  return q;
}

Matrix4c lorentz_spinor_map(const Matrix4r& omega, const GammaRepresentation& rep) {
  if ((omega + omega.transpose()).cwiseAbs().maxCoeff() > kAlgebraTol)
    throw std::invalid_argument("lorentz parameters must be antisymmetric");
  Matrix4c exponent = Matrix4c::Zero();
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      exponent += omega(mu, nu) * build_sigma(rep, mu, nu);
  return matrix_exponential(Complex(0, -0.25) * exponent);
}

Matrix4c matrix_exponential(const Matrix4c& x) {
  double norm = x.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.25) squarings = int(std::ceil(std::log2(norm / 0.25)));
  Matrix4c y = x / std::pow(2.0, squarings);

  Matrix4c term = Matrix4c::Identity();
  Matrix4c sum = term;
  for (int n = 1; n <= 32; ++n) {
    term = (term * y) / double(n);
    sum += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

}  // namespace dirac1c
