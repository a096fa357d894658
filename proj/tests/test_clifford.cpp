#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dirac1c/clifford.hpp"
#include "dirac1c/emfield.hpp"

using namespace dirac1c;

namespace {

Spinor random_spinor(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Spinor s;
  for (int i = 0; i < 4; ++i) s(i) = Complex(n(rng), n(rng));
  return s;
}

Matrix4r random_antisymmetric(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix4r m = Matrix4r::Zero();
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      m(i, j) = u(rng);
      m(j, i) = -m(i, j);
    }
  return m;
}

const Spinor kXiLower = (Spinor() << 0, 0, -1, 0).finished();
const Spinor kEtaLower = (Spinor() << 0, 0, 0, 1).finished();

}  // namespace

TEST_CASE("all builtin representations pass every invariant") {
  for (const auto& name : builtin_representation_names()) {
    CAPTURE(name);
    ValidationReport report = validate_representation(builtin_representation(name));
    for (const auto& check : report.checks) {
      CAPTURE(check.name);
      CHECK(check.deviation <= 1e-12);
    }
  }
  // the chiral matrices are exact integers: every deviation is exactly zero
  CHECK(validate_representation(builtin_representation("chiral")).max_deviation() ==
        0.0);
}

TEST_CASE("chiral representation matches the published matrices exactly") {
  GammaRepresentation rep = builtin_representation("chiral");

  Matrix4c g5 = Matrix4c::Zero();
  g5.diagonal() << 1, 1, -1, -1;
  CHECK((rep.gamma5 - g5).cwiseAbs().maxCoeff() == 0.0);

  Matrix4c g0 = Matrix4c::Zero();
  g0(0, 2) = g0(1, 3) = g0(2, 0) = g0(3, 1) = -1;
  CHECK((rep.gamma[0] - g0).cwiseAbs().maxCoeff() == 0.0);

  Matrix4c c = Matrix4c::Zero();
  c(0, 1) = -1;
  c(1, 0) = 1;
  c(2, 3) = 1;
  c(3, 2) = -1;
  CHECK((rep.c_matrix - c).cwiseAbs().maxCoeff() == 0.0);

  // Clifford diagonal case
  CHECK((rep.gamma[0] * rep.gamma[0] - Matrix4c::Identity()).cwiseAbs().maxCoeff() ==
        0.0);
}

TEST_CASE("unknown representation name is rejected with the known list") {
  CHECK_THROWS_WITH_AS(builtin_representation("bogus"),
                       doctest::Contains("chiral"), ConfigError);
}

TEST_CASE("validation flags a scaled gamma1") {
  GammaRepresentation rep = builtin_representation("chiral");
  rep.gamma[1] *= 1.1;
  ValidationReport report = validate_representation(rep);
  CHECK_FALSE(report.pass());
  bool clifford_flagged = false;
  for (const auto& check : report.checks)
    if (check.name == "clifford relation" && !check.pass()) clifford_flagged = true;
  CHECK(clifford_flagged);
}

TEST_CASE("similarity transforms commuting with gamma0") {
  GammaRepresentation rep = builtin_representation("dirac-standard");

  SUBCASE("real orthogonal: the transformed set stays fully admissible") {
    // Block rotations commute with the diagonal gamma0.
    Matrix4c s = Matrix4c::Zero();
    const double c1 = std::cos(0.4), s1 = std::sin(0.4);
    const double c2 = std::cos(0.9), s2 = std::sin(0.9);
    s(0, 0) = c1;
    s(0, 1) = -s1;
    s(1, 0) = s1;
    s(1, 1) = c1;
    s(2, 2) = c2;
    s(2, 3) = -s2;
    s(3, 2) = s2;
    s(3, 3) = c2;

    GammaRepresentation transformed = rep;
    transformed.name = "rotated";
    for (int mu = 0; mu < 4; ++mu)
      transformed.gamma[mu] = s * rep.gamma[mu] * s.adjoint();
    transformed.gamma5 = s * rep.gamma5 * s.adjoint();
    transformed.c_matrix = find_charge_conjugation(transformed.gamma);

    ValidationReport report = validate_representation(transformed);
    CAPTURE(report.max_deviation());
    CHECK(report.pass());
  }

  SUBCASE("complex diagonal phases: hermiticity holds, C^2 = -I does not") {
    // gamma'^mu+ = gamma'^0 gamma'^mu gamma'^0 survives any unitary commuting
    // with gamma0, but the -transpose intertwiner of the transformed set
    // squares to a non-scalar, and the solver must reject it.
    Matrix4c s = Matrix4c::Zero();
    s.diagonal() << std::polar(1.0, 0.3), 1.0, std::polar(1.0, -0.7), 1.0;
    GammaRepresentation transformed = rep;
    for (int mu = 0; mu < 4; ++mu)
      transformed.gamma[mu] = s * rep.gamma[mu] * s.adjoint();
    transformed.gamma5 = s * rep.gamma5 * s.adjoint();
    transformed.c_matrix = rep.c_matrix;  // placeholder, not validated here

    double herm = 0.0;
    for (const auto& check : validate_representation(transformed).checks)
      if (check.name == "gamma hermiticity") herm = check.deviation;
    CHECK(herm <= 1e-10);

    CHECK_THROWS_WITH_AS(find_charge_conjugation(transformed.gamma),
                         doctest::Contains("C^2"), std::runtime_error);
  }
}

TEST_CASE("sigma matrices") {
  GammaRepresentation rep = builtin_representation("chiral");

  SUBCASE("equal indices give zero") {
    CHECK(build_sigma(rep, 2, 2).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("sigma^{12} is blockdiag(sigma3, sigma3)") {
    Matrix4c expect = Matrix4c::Zero();
    expect.diagonal() << 1, -1, 1, -1;
    CHECK((build_sigma(rep, 1, 2) - expect).cwiseAbs().maxCoeff() <= 1e-15);
  }
  SUBCASE("antisymmetry in the index pair") {
    for (const auto& name : builtin_representation_names()) {
      GammaRepresentation r = builtin_representation(name);
      for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
          CHECK((build_sigma(r, mu, nu) + build_sigma(r, nu, mu))
                    .cwiseAbs()
                    .maxCoeff() == 0.0);
    }
  }
  SUBCASE("index out of range") {
    CHECK_THROWS_AS(build_sigma(rep, 4, 0), std::out_of_range);
  }
}

TEST_CASE("charge conjugation solver") {
  SUBCASE("chiral: recovers the published C up to the documented sign rule") {
    GammaRepresentation rep = builtin_representation("chiral");
    Matrix4c c = find_charge_conjugation(rep.gamma);
    double same = (c - rep.c_matrix).cwiseAbs().maxCoeff();
    double flipped = (c + rep.c_matrix).cwiseAbs().maxCoeff();
    CHECK(std::min(same, flipped) <= 1e-12);
    // The sign rule: first nonzero row-major entry has argument in
    // (-pi/2, pi/2]. The published C starts with -1, so the solver flips it.
    CHECK(flipped <= 1e-12);
  }

  SUBCASE("solver output satisfies every constraint for all builtins") {
    for (const auto& name : builtin_representation_names()) {
      GammaRepresentation rep = builtin_representation(name);
      Matrix4c c = find_charge_conjugation(rep.gamma);
      Matrix4c c_inv = -c;
      for (int mu = 0; mu < 4; ++mu)
        CHECK((c * rep.gamma[mu] * c_inv + rep.gamma[mu].transpose())
                  .cwiseAbs()
                  .maxCoeff() <= 1e-12);
      CHECK((c.transpose() + c).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK((c * c.adjoint() - Matrix4c::Identity()).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK((c * c + Matrix4c::Identity()).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }

  SUBCASE("a non-admissible gamma set is rejected") {
    GammaRepresentation rep = builtin_representation("chiral");
    rep.gamma[2] *= 1.5;  // breaks the Clifford relation
    CHECK_THROWS(find_charge_conjugation(rep.gamma));
  }
}

TEST_CASE("dirac adjoint") {
  GammaRepresentation rep = builtin_representation("chiral");

  Spinor e1 = Spinor::Unit(0);
  CoSpinor bar = dirac_adjoint(e1, rep);
  CoSpinor expect;
  expect << 0, 0, -1, 0;
  CHECK((bar - expect).cwiseAbs().maxCoeff() == 0.0);

  CHECK(dirac_adjoint(Spinor::Zero(), rep).cwiseAbs().maxCoeff() == 0.0);

  // double adjoint recovers the spinor: (chiBar gamma0)+ = chi
  std::mt19937_64 rng(7);
  Spinor chi = random_spinor(rng);
  Spinor back = (dirac_adjoint(chi, rep) * rep.gamma[0]).adjoint();
  CHECK((back - chi).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("charge conjugation identities on random spinors") {
  std::mt19937_64 rng(11);
  for (const auto& name : builtin_representation_names()) {
    GammaRepresentation rep = builtin_representation(name);
    for (int trial = 0; trial < 100; ++trial) {
      Spinor chi = random_spinor(rng);
      Spinor phi = random_spinor(rng);
      // chiBar chiC = 0
      CHECK(std::abs(pair_bilinear(chi, chi, rep)) <= 1e-12 * chi.squaredNorm());
      // antisymmetry of the pairing
      CHECK(std::abs(pair_bilinear(chi, phi, rep) + pair_bilinear(phi, chi, rep)) <=
            1e-12 * chi.norm() * phi.norm());
    }
  }
}

TEST_CASE("charge conjugate of a chiral eigenvector flips the eigenvalue") {
  GammaRepresentation rep = builtin_representation("chiral");
  Spinor xi_c = charge_conjugate(kXiLower, rep);
  CHECK(xi_c.norm() > 0.5);
  // gamma5 xi = -xi, so xiC must have eigenvalue +1
  CHECK((rep.gamma5 * xi_c - xi_c).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("chiral projection") {
  GammaRepresentation rep = builtin_representation("chiral");
  Spinor psi;
  psi << 1, 2, 3, 4;

  Spinor plus = chiral_project(psi, +1, rep);
  Spinor expect;
  expect << 1, 2, 0, 0;
  CHECK((plus - expect).cwiseAbs().maxCoeff() == 0.0);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Spinor v = random_spinor(rng);
    Spinor p = chiral_project(v, +1, rep);
    Spinor m = chiral_project(v, -1, rep);
    CHECK((p + m - v).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK(chiral_project(p, -1, rep).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((chiral_project(p, +1, rep) - p).cwiseAbs().maxCoeff() <= 1e-14);
  }

  CHECK_THROWS_AS(chiral_project(psi, 0, rep), std::invalid_argument);
}

TEST_CASE("chiral basis construction") {
  GammaRepresentation rep = builtin_representation("chiral");

  SUBCASE("default spans the requested eigenspace") {
    for (int s : {+1, -1}) {
      ChiralBasis basis = make_chiral_basis(rep, s);
      CHECK((rep.gamma5 * basis.xi - double(s) * basis.xi).cwiseAbs().maxCoeff() <=
            1e-12);
      CHECK((rep.gamma5 * basis.eta - double(s) * basis.eta).cwiseAbs().maxCoeff() <=
            1e-12);
      CHECK(std::abs(pair_bilinear(basis.xi, basis.eta, rep)) > 1e-8);
    }
  }

  SUBCASE("the published pair is accepted as an override") {
    ChiralBasis basis = make_chiral_basis(rep, -1, std::make_pair(kXiLower, kEtaLower));
    CHECK((basis.xi - kXiLower).cwiseAbs().maxCoeff() == 0.0);
    CHECK(std::abs(pair_bilinear(basis.xi, basis.eta, rep) - Complex(1.0)) <= 1e-15);
  }

  SUBCASE("collinear override is rejected") {
    CHECK_THROWS_WITH_AS(
        make_chiral_basis(rep, -1, std::make_pair(kXiLower, Spinor(2.0 * kXiLower))),
        doctest::Contains("independence"), std::invalid_argument);
  }

  SUBCASE("wrong-chirality override is rejected") {
    CHECK_THROWS_WITH_AS(
        make_chiral_basis(rep, -1, std::make_pair(Spinor(Spinor::Unit(0)), kEtaLower)),
        doctest::Contains("eigenvector"), std::invalid_argument);
  }

  SUBCASE("default basis works for every builtin") {
    for (const auto& name : builtin_representation_names()) {
      GammaRepresentation r = builtin_representation(name);
      for (int s : {+1, -1}) {
        ChiralBasis basis = make_chiral_basis(r, s);
        CHECK(std::abs(pair_bilinear(basis.xi, basis.eta, r)) > 1e-8);
      }
    }
  }
}

TEST_CASE("coefficient quadruple: chiral pins") {
  GammaRepresentation rep = builtin_representation("chiral");
  ChiralBasis basis = make_chiral_basis(rep, -1, std::make_pair(kXiLower, kEtaLower));

  SUBCASE("E = (1,0,0), H = 0") {
    Matrix4c f = field_matrix(FieldTensor::from_e_h({1, 0, 0}, {0, 0, 0}), rep);
    CoefficientQuadruple q = coefficient_quadruple(basis, f, rep);
    CHECK(std::abs(q.a) <= 1e-15);
    CHECK(std::abs(q.b - Complex(0, -1)) <= 1e-15);
    CHECK(std::abs(q.a_prime - Complex(0, -1)) <= 1e-15);
    CHECK(std::abs(q.b_prime) <= 1e-15);
  }

  SUBCASE("E = 0, H = (0,0,1): degenerate point") {
    Matrix4c f = field_matrix(FieldTensor::from_e_h({0, 0, 0}, {0, 0, 1}), rep);
    CoefficientQuadruple q = coefficient_quadruple(basis, f, rep);
    CHECK(std::abs(q.a - Complex(-1, 0)) <= 1e-15);  // a = i F^3 = i*i
    CHECK(std::abs(q.b) <= 1e-15);
  }

  SUBCASE("zero field") {
    CoefficientQuadruple q = coefficient_quadruple(basis, Matrix4c::Zero(), rep);
    CHECK(std::abs(q.a) + std::abs(q.b) + std::abs(q.a_prime) + std::abs(q.b_prime) ==
          0.0);
  }
}

TEST_CASE("bilinear identities with random field matrices") {
  std::mt19937_64 rng(23);
  for (const auto& name : builtin_representation_names()) {
    GammaRepresentation rep = builtin_representation(name);
    for (int trial = 0; trial < 40; ++trial) {
      Matrix4r omega = random_antisymmetric(rng);
      // any antisymmetric F_{mu nu} contracted into sigma
      Matrix4c f = Matrix4c::Zero();
      for (int mu = 0; mu < 4; ++mu)
        for (int nu = mu + 1; nu < 4; ++nu)
          f += omega(mu, nu) * build_sigma(rep, mu, nu);

      Spinor xi = random_spinor(rng);
      Spinor eta = random_spinor(rng);
      // xiBar F etaC = etaBar F xiC
      CHECK(std::abs(field_bilinear(xi, f, eta, rep) -
                     field_bilinear(eta, f, xi, rep)) <=
            1e-12 * (1.0 + f.norm()) * xi.norm() * eta.norm());
    }
  }
}

TEST_CASE("b' = -a on random constant fields") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const auto& name : builtin_representation_names()) {
    GammaRepresentation rep = builtin_representation(name);
    ChiralBasis basis = make_chiral_basis(rep, -1);
    for (int trial = 0; trial < 40; ++trial) {
      Vector3r e(u(rng), u(rng), u(rng)), h(u(rng), u(rng), u(rng));
      Matrix4c f = field_matrix(FieldTensor::from_e_h(e, h), rep);
      CoefficientQuadruple q = coefficient_quadruple(basis, f, rep);
      CHECK(std::abs(q.b_prime + q.a) <= 1e-12);
    }
  }
}

TEST_CASE("sign of C does not leak into the quadruple") {
  GammaRepresentation rep = builtin_representation("dirac-standard");
  GammaRepresentation flipped = rep;
  flipped.c_matrix = -rep.c_matrix;

  ChiralBasis basis = make_chiral_basis(rep, +1);
  Matrix4c f = field_matrix(FieldTensor::from_e_h({0.3, -0.7, 0.2}, {0.1, 0.4, -0.9}),
                            rep);
  CoefficientQuadruple q1 = coefficient_quadruple(basis, f, rep);
  CoefficientQuadruple q2 = coefficient_quadruple(basis, f, flipped);
  CHECK(std::abs(q1.a - q2.a) <= 1e-14);
  CHECK(std::abs(q1.b - q2.b) <= 1e-14);
  CHECK(std::abs(q1.a_prime - q2.a_prime) <= 1e-14);
}

TEST_CASE("lorentz spinor map") {
  GammaRepresentation rep = builtin_representation("chiral");

  SUBCASE("zero parameters give the identity") {
    Matrix4c lambda = lorentz_spinor_map(Matrix4r::Zero(), rep);
    CHECK((lambda - Matrix4c::Identity()).cwiseAbs().maxCoeff() <= 1e-14);
  }

  SUBCASE("commutes with gamma5") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
      Matrix4c lambda = lorentz_spinor_map(random_antisymmetric(rng), rep);
      CHECK((lambda * rep.gamma5 - rep.gamma5 * lambda).cwiseAbs().maxCoeff() <=
            1e-10);
    }
  }

  SUBCASE("a boost preserves the chirality of eigenvectors") {
    Matrix4r omega = Matrix4r::Zero();
    omega(0, 1) = 0.3;
    omega(1, 0) = -0.3;
    Matrix4c lambda = lorentz_spinor_map(omega, rep);
    Spinor boosted = lambda * kXiLower;
    CHECK((rep.gamma5 * boosted + boosted).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(boosted.norm() > 0.1);
  }

  SUBCASE("non-antisymmetric parameters are rejected") {
    Matrix4r omega = Matrix4r::Zero();
    omega(0, 1) = 1.0;
    CHECK_THROWS_AS(lorentz_spinor_map(omega, rep), std::invalid_argument);
  }
}
