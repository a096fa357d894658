#include "dirac1c/emfield.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace dirac1c {

namespace {

double get_param(const FieldParams& params, const std::string& key, double dflt) {
  auto it = params.find(key);
  return it == params.end() ? dflt : it->second;
}

void reject_unknown(const std::string& name, const FieldParams& params,
                    const std::set<std::string>& known) {
  for (const auto& [key, value] : params) {
    if (!known.count(key))
      throw ConfigError("field '" + name + "': unknown parameter '" + key + "'");
  }
}

PotentialField zero_field() {
  PotentialField f;
  f.name = "zero";
  f.gauge_note = "A == 0";
  f.a = [](const Vector4r&) { return Vector4r::Zero().eval(); };
  f.da = [](const Vector4r&) { return Matrix4r::Zero().eval(); };
  return f;
}

PotentialField constant_e_field(const FieldParams& params) {
  const double e = get_param(params, "E", 1.0);
  const int axis = int(get_param(params, "axis", 1.0));
  const bool temporal = get_param(params, "gauge", 0.0) != 0.0;
  if (axis < 1 || axis > 3) throw ConfigError("constant-E: axis must be 1..3");

  PotentialField f;
  f.name = "constant-E";
  f.params = {{"E", e}, {"axis", double(axis)}, {"gauge", temporal ? 1.0 : 0.0}};
  if (temporal) {
    // Weyl gauge, A_axis = E x^0; spatially homogeneous, so usable on a
    // periodic axis (the static gauge is not).
    f.gauge_note = "A_i = E x^0 along the chosen axis (temporal/Weyl gauge)";
    f.a = [e, axis](const Vector4r& x) {
      Vector4r a = Vector4r::Zero();
      a(axis) = e * x(0);
      return a;
    };
    f.da = [e, axis](const Vector4r&) {
      Matrix4r d = Matrix4r::Zero();
      d(axis, 0) = e;
      return d;
    };
  } else {
    f.gauge_note = "A_0 = -E x^i (static gauge)";
    f.a = [e, axis](const Vector4r& x) {
      Vector4r a = Vector4r::Zero();
      a(0) = -e * x(axis);
      return a;
    };
    f.da = [e, axis](const Vector4r&) {
      Matrix4r d = Matrix4r::Zero();
      d(0, axis) = -e;
      return d;
    };
  }
  return f;
}

PotentialField constant_h_field(const FieldParams& params) {
  const double h = get_param(params, "H", 1.0);
  PotentialField f;
  f.name = "constant-H";
  f.params = {{"H", h}};
  // Landau gauge for H^3 = h: contravariant A^2 = h x^1, i.e. A_2 = -h x^1.
  f.gauge_note = "A_2 = -H x^1 (Landau gauge, H along x^3)";
  f.a = [h](const Vector4r& x) {
    Vector4r a = Vector4r::Zero();
    a(2) = -h * x(1);
    return a;
  };
  f.da = [h](const Vector4r&) {
    Matrix4r d = Matrix4r::Zero();
    d(2, 1) = -h;
    return d;
  };
  return f;
}

PotentialField crossed_constant_field(const FieldParams& params) {
  Vector3r e(get_param(params, "E1", 1.0), get_param(params, "E2", 0.0),
             get_param(params, "E3", 0.0));
  Vector3r h(get_param(params, "H1", 0.0), get_param(params, "H2", 0.0),
             get_param(params, "H3", 1.0));
  PotentialField f;
  f.name = "crossed-constant";
  f.params = {{"E1", e(0)}, {"E2", e(1)}, {"E3", e(2)},
              {"H1", h(0)}, {"H2", h(1)}, {"H3", h(2)}};
  f.gauge_note = "A_0 = -E.x, spatial A^k = (1/2)(H x x)^k (symmetric gauge)";
  f.a = [e, h](const Vector4r& x) {
    Vector4r a = Vector4r::Zero();
    a(0) = -(e(0) * x(1) + e(1) * x(2) + e(2) * x(3));
    Vector3r r(x(1), x(2), x(3));
    Vector3r a_up = 0.5 * h.cross(r);
    for (int i = 0; i < 3; ++i) a(i + 1) = -a_up(i);  // lower the index
    return a;
  };
  f.da = [e, h](const Vector4r&) {
    Matrix4r d = Matrix4r::Zero();
    for (int i = 0; i < 3; ++i) d(0, i + 1) = -e(i);
    // covariant A_1 = (h3 x2 - h2 x3)/2 etc., so the partials are constants
    d(1, 2) = 0.5 * h(2);
    d(1, 3) = -0.5 * h(1);
    d(2, 1) = -0.5 * h(2);
    d(2, 3) = 0.5 * h(0);
    d(3, 1) = 0.5 * h(1);
    d(3, 2) = -0.5 * h(0);
    return d;
  };
  return f;
}

PotentialField plane_wave_field(const FieldParams& params) {
  const double amp = get_param(params, "amplitude", 0.5);
  const double omega = get_param(params, "omega", 1.0);
  const double phase = get_param(params, "phase", 0.0);
  const bool linear = get_param(params, "polarization", 0.0) != 0.0;
  if (omega == 0.0) throw ConfigError("plane-wave: omega must be nonzero");

  PotentialField f;
  f.name = "plane-wave";
  f.params = {{"amplitude", amp},
              {"omega", omega},
              {"phase", phase},
              {"polarization", linear ? 1.0 : 0.0}};
  f.gauge_note = linear
      ? "A_2 = a cos(theta), theta = omega (x^0 - x^1) + phase; Lorenz gauge"
      : "A_2 = a cos(theta), A_3 = a sin(theta), theta = omega (x^0 - x^1) + "
        "phase; circular polarization, Lorenz gauge, |b| constant for the "
        "chiral component";
  f.a = [amp, omega, phase, linear](const Vector4r& x) {
    const double theta = omega * (x(0) - x(1)) + phase;
    Vector4r a = Vector4r::Zero();
    a(2) = amp * std::cos(theta);
    if (!linear) a(3) = amp * std::sin(theta);
    return a;
  };
  f.da = [amp, omega, phase, linear](const Vector4r& x) {
    const double theta = omega * (x(0) - x(1)) + phase;
    Matrix4r d = Matrix4r::Zero();
    const double dc = -amp * omega * std::sin(theta);
    d(2, 0) = dc;
    d(2, 1) = -dc;
    if (!linear) {
      const double ds = amp * omega * std::cos(theta);
      d(3, 0) = ds;
      d(3, 1) = -ds;
    }
    return d;
  };
  return f;
}

// A_mu = c0_mu + sum_nu c1_{mu nu} x^nu + sum_nu c2_{mu nu} (x^nu)^2.
// Exact derivatives of low degree, for stencil-exactness tests.
PotentialField polynomial_field(const FieldParams& params) {
  Vector4r c0 = Vector4r::Zero();
  Matrix4r c1 = Matrix4r::Zero(), c2 = Matrix4r::Zero();
  std::set<std::string> known;
  for (int mu = 0; mu < 4; ++mu) {
    std::string k0 = "c0_" + std::to_string(mu);
    known.insert(k0);
    if (params.count(k0)) c0(mu) = params.at(k0);
    for (int nu = 0; nu < 4; ++nu) {
      std::string k1 = "c1_" + std::to_string(mu) + std::to_string(nu);
      std::string k2 = "c2_" + std::to_string(mu) + std::to_string(nu);
      known.insert(k1);
      known.insert(k2);
      if (params.count(k1)) c1(mu, nu) = params.at(k1);
      if (params.count(k2)) c2(mu, nu) = params.at(k2);
    }
  }
  reject_unknown("polynomial-test", params, known);
  if (params.empty()) c1(0, 0) = 1.0;  // default A_mu = (x^0, 0, 0, 0)

  PotentialField f;
  f.name = "polynomial-test";
  f.params = params;
  f.gauge_note = "A_mu = c0_mu + c1_{mu nu} x^nu + c2_{mu nu} (x^nu)^2";
  f.a = [c0, c1, c2](const Vector4r& x) {
    Vector4r a = c0;
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu)
        a(mu) += c1(mu, nu) * x(nu) + c2(mu, nu) * x(nu) * x(nu);
    return a;
  };
  f.da = [c1, c2](const Vector4r& x) {
    Matrix4r d = c1;
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) d(mu, nu) += 2.0 * c2(mu, nu) * x(nu);
    return d;
  };
  return f;
}

}  // namespace

PotentialField catalog(const std::string& name, const FieldParams& params) {
  if (name == "zero") {
    reject_unknown(name, params, {});
    return zero_field();
  }
  if (name == "constant-E") {
    reject_unknown(name, params, {"E", "axis", "gauge"});
    return constant_e_field(params);
  }
  if (name == "constant-H") {
    reject_unknown(name, params, {"H"});
    return constant_h_field(params);
  }
  if (name == "crossed-constant") {
    reject_unknown(name, params, {"E1", "E2", "E3", "H1", "H2", "H3"});
    return crossed_constant_field(params);
  }
  if (name == "plane-wave") {
    reject_unknown(name, params, {"amplitude", "omega", "phase", "polarization"});
    return plane_wave_field(params);
  }
  if (name == "polynomial-test") return polynomial_field(params);

  std::ostringstream msg;
  msg << "unknown field '" << name << "'; known:";
  for (const auto& n : catalog_names()) msg << " " << n;
  throw ConfigError(msg.str());
}

std::vector<std::string> catalog_names() {
  return {"zero",             "constant-E", "constant-H",
          "crossed-constant", "plane-wave", "polynomial-test"};
}

std::string describe_field(const std::string& name) {
  PotentialField f = catalog(name);
  std::ostringstream out;
  out << name << "\n  gauge: " << f.gauge_note << "\n  defaults:";
  if (f.params.empty()) out << " (none)";
  for (const auto& [key, value] : f.params) out << " " << key << "=" << value;
  out << "\n";
  if (name == "constant-E")
    out << "  E^i = E along the chosen axis, H = 0. gauge=1 selects the "
           "periodic-friendly temporal gauge.\n";
  if (name == "constant-H") out << "  H^3 = H, E = 0.\n";
  if (name == "crossed-constant") out << "  uniform E and H as given.\n";
  if (name == "plane-wave")
    out << "  null wave along x^1: |E| = |H|, E.H = 0. polarization=1 "
           "selects linear polarization (field vanishes on phase lines).\n";
  if (name == "polynomial-test")
    out << "  low-degree polynomial potential for stencil-exactness tests.\n";
  return out.str();
}

FieldTensor FieldTensor::from_e_h(const Vector3r& e, const Vector3r& h) {
  FieldTensor t;
  Matrix4r& f = t.f_upup;
  f(0, 1) = -e(0);
  f(0, 2) = -e(1);
  f(0, 3) = -e(2);
  f(1, 2) = -h(2);
  f(1, 3) = h(1);
  f(2, 3) = -h(0);
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < mu; ++nu) f(mu, nu) = -f(nu, mu);
  return t;
}

FieldTensor field_tensor(const PotentialField& field, const Vector4r& x) {
  const Matrix4r d = field.da(x);  // d(mu, nu) = dA_mu/dx^nu
  FieldTensor t;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      // F^{mu nu} = d^mu A^nu - d^nu A^mu
      t.f_upup(mu, nu) =
          metric_sign(mu) * metric_sign(nu) * (d(nu, mu) - d(mu, nu));
  return t;
}

Matrix4c field_matrix(const FieldTensor& tensor, const GammaRepresentation& rep) {
  // (1/2) F_{nu mu} sigma^{nu mu} = sum_{nu < mu} F_{nu mu} sigma^{nu mu}
  Matrix4c f = Matrix4c::Zero();
  for (int nu = 0; nu < 4; ++nu)
    for (int mu = nu + 1; mu < 4; ++mu) {
      double f_low = metric_sign(nu) * metric_sign(mu) * tensor.f_upup(nu, mu);
      f += f_low * build_sigma(rep, nu, mu);
    }
  return f;
}

Matrix4c field_matrix_at(const PotentialField& field, const Vector4r& x,
                         const GammaRepresentation& rep) {
  return field_matrix(field_tensor(field, x), rep);
}

double divergence_a(const PotentialField& field, const Vector4r& x) {
  const Matrix4r d = field.da(x);
  double div = 0.0;
  for (int mu = 0; mu < 4; ++mu) div += metric_sign(mu) * d(mu, mu);
  return div;
}

}  // namespace dirac1c
