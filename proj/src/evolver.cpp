#include "dirac1c/evolver.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <cmath>

namespace dirac1c {

namespace {

using SparseC = Eigen::SparseMatrix<Complex>;
using Triplet = Eigen::Triplet<Complex>;

Vector4r slice_point(const EvolutionProblem& prob, double t, int j) {
  Vector4r x;
  for (int ax = 0; ax < 4; ++ax) x(ax) = prob.grid.origin[ax];
  x(0) = t;
  x(prob.space_axis) += prob.grid.spacing[prob.space_axis] * j;
  return x;
}

// H = gamma^0 + A_0 + sum_m gamma^0 gamma^m (A_m - i d_m), derivative along
// the active axis only; central difference, periodic wrap.
SparseC assemble_hamiltonian(const EvolutionProblem& prob, double t) {
  const int n = prob.grid.extents[prob.space_axis];
  const double dx = prob.grid.spacing[prob.space_axis];
  const GammaRepresentation& rep = prob.rep;

  std::array<Matrix4c, 4> g0g;
  for (int mu = 0; mu < 4; ++mu) g0g[mu] = rep.gamma[0] * rep.gamma[mu];
  const Matrix4c hop = Complex(0, -1.0) / (2.0 * dx) * g0g[prob.space_axis];

  std::vector<Triplet> triplets;
  triplets.reserve(size_t(n) * 48);
  auto add_block = [&](int row, int col, const Matrix4c& m) {
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        if (m(r, c) != 0.0) triplets.emplace_back(4 * row + r, 4 * col + c, m(r, c));
  };

  for (int j = 0; j < n; ++j) {
    const Vector4r a = prob.field.a(slice_point(prob, t, j));
    Matrix4c diag = rep.gamma[0] + a(0) * Matrix4c::Identity();
    for (int m = 1; m <= 3; ++m) diag += a(m) * g0g[m];
    add_block(j, j, diag);
    add_block(j, (j + 1) % n, hop);
    add_block(j, (j - 1 + n) % n, -hop);
  }
  SparseC h(4 * n, 4 * n);
  h.setFromTriplets(triplets.begin(), triplets.end());
  return h;
}

}  // namespace

void EvolutionProblem::validate() const {
  grid.validate();
  if (space_axis < 1 || space_axis > 3)
    throw ConfigError("evolution: space axis must be 1..3");
  if (grid.extents[0] < 2) throw ConfigError("evolution: need at least one step");
  if (grid.extents[space_axis] < 3)
    throw ConfigError("evolution: spatial axis too small");
  for (int ax = 1; ax < 4; ++ax)
    if (ax != space_axis && grid.extents[ax] != 1)
      throw ConfigError("evolution: inactive axes must have extent 1");
  if (grid.boundary[space_axis] != Boundary::periodic)
    throw ConfigError("evolution: spatial axis must be periodic");
  if (grid.spacing[0] > grid.spacing[space_axis] * (1.0 + 1e-12))
    throw ConfigError("evolution: dt must not exceed dx");
  if (initial.cols() != grid.extents[space_axis])
    throw ConfigError("evolution: initial slice size mismatch");

  // The 1+1d reduction is exact only if the field ignores the frozen axes.
  const double t_probe = grid.origin[0] + 0.37 * grid.spacing[0] * (grid.extents[0] - 1);
  for (int j : {0, grid.extents[space_axis] / 2}) {
    Vector4r x = slice_point(*this, t_probe, j);
    const Vector4r a0 = field.a(x);
    for (int ax = 1; ax < 4; ++ax) {
      if (ax == space_axis) continue;
      for (double offset : {0.51, -1.13}) {
        Vector4r y = x;
        y(ax) += offset;
        if ((field.a(y) - a0).cwiseAbs().maxCoeff() > 1e-10)
          throw ConfigError("evolution: field varies along inactive axis " +
                            std::to_string(ax));
      }
    }
  }
}

SpinorGridField evolve(const EvolutionProblem& prob) {
  prob.validate();
  const SpacetimeGrid& g = prob.grid;
  const int n = g.extents[prob.space_axis];
  const int steps = prob.steps();
  const double dt = g.spacing[0];

  SpinorGridField block = SpinorGridField::zeros(g);
  const long space_stride = g.strides()[prob.space_axis];
  const long time_stride = g.strides()[0];
  auto store_slice = [&](int step, const Eigen::VectorXcd& psi) {
    for (int j = 0; j < n; ++j)
      block.values.col(step * time_stride + j * space_stride) = psi.segment<4>(4 * j);
  };

  Eigen::VectorXcd psi(4 * n);
  for (int j = 0; j < n; ++j) psi.segment<4>(4 * j) = prob.initial.col(j);
  store_slice(0, psi);

  // Time-independent fields need a single factorization.
  const SparseC h0 = assemble_hamiltonian(prob, g.origin[0] + 0.5 * dt);
  bool is_static = steps < 2;
  if (!is_static) {
    const SparseC h1 = assemble_hamiltonian(prob, g.origin[0] + 1.5 * dt);
    is_static = (h0 - h1).norm() == 0.0;
  }

  const SparseC identity = [&] {
    SparseC id(4 * n, 4 * n);
    id.setIdentity();
    return id;
  }();

  Eigen::SparseLU<SparseC> solver;
  SparseC stepper_rhs;
  if (is_static) {
    SparseC lhs = identity + Complex(0, 0.5 * dt) * h0;
    stepper_rhs = identity - Complex(0, 0.5 * dt) * h0;
    solver.compute(lhs);
    if (solver.info() != Eigen::Success)
      throw EvolveError("singular step matrix at step 0");
  }

  for (int step = 0; step < steps; ++step) {
    if (!is_static) {
      const double t_half = g.origin[0] + (step + 0.5) * dt;
      const SparseC h = assemble_hamiltonian(prob, t_half);
      SparseC lhs = identity + Complex(0, 0.5 * dt) * h;
      stepper_rhs = identity - Complex(0, 0.5 * dt) * h;
      solver.compute(lhs);
      if (solver.info() != Eigen::Success)
        throw EvolveError("singular step matrix at step " + std::to_string(step));
    }
    Eigen::VectorXcd rhs = stepper_rhs * psi;
    psi = solver.solve(rhs);
    if (solver.info() != Eigen::Success)
      throw EvolveError("linear solve failed at step " + std::to_string(step));
    store_slice(step + 1, psi);
  }
  return block;
}

Eigen::MatrixXcd dense_hamiltonian(const EvolutionProblem& prob, double t) {
  return Eigen::MatrixXcd(assemble_hamiltonian(prob, t));
}

namespace {

std::vector<double> slice_norms(const SpinorGridField& block, int space_axis) {
  const SpacetimeGrid& g = block.grid;
  const int nt = g.extents[0];
  const int n = g.extents[space_axis];
  const long ts = g.strides()[0], ss = g.strides()[space_axis];
  std::vector<double> norms(nt, 0.0);
  for (int step = 0; step < nt; ++step) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j)
      acc += block.values.col(step * ts + j * ss).squaredNorm();
    norms[step] = acc * g.spacing[space_axis];
  }
  return norms;
}

}  // namespace

double norm_drift(const SpinorGridField& block, int space_axis) {
  auto norms = slice_norms(block, space_axis);
  if (norms[0] == 0.0) return 0.0;
  double drift = 0.0;
  for (double n : norms) drift = std::max(drift, std::abs(n / norms[0] - 1.0));
  return drift;
}

double max_step_norm_drift(const SpinorGridField& block, int space_axis) {
  auto norms = slice_norms(block, space_axis);
  double drift = 0.0;
  for (size_t i = 1; i < norms.size(); ++i) {
    if (norms[i - 1] == 0.0) continue;
    drift = std::max(drift, std::abs(norms[i] / norms[i - 1] - 1.0));
  }
  return drift;
}

SpinorBlock initial_data(const std::string& name, const SpacetimeGrid& grid,
                         int space_axis, const FieldParams& params,
                         const GammaRepresentation& rep) {
  const int n = grid.extents[space_axis];
  const double dx = grid.spacing[space_axis];
  const double x0 = grid.origin[space_axis];
  const double length = n * dx;
  SpinorBlock out(4, n);

  auto get = [&params](const std::string& key, double dflt) {
    auto it = params.find(key);
    return it == params.end() ? dflt : it->second;
  };

  // w with (pslash - 1) w = 0 via the on-shell projector (pslash + 1).
  auto on_shell_spinor = [&rep](double p_space, int axis) {
    const double energy = std::sqrt(1.0 + p_space * p_space);
    Matrix4c pslash = energy * rep.gamma[0] - p_space * rep.gamma[axis];
    for (int seed = 0; seed < 4; ++seed) {
      Spinor w = (pslash + Matrix4c::Identity()) * Spinor::Unit(seed);
      if (w.norm() > 1e-8) return Spinor(w / w.norm());
    }
    throw EvolveError("on-shell projector vanished");
  };

  if (name == "rest-plane-wave") {
    const Spinor w = on_shell_spinor(0.0, space_axis);
    for (int j = 0; j < n; ++j) out.col(j) = w;
    return out;
  }
  if (name == "boosted-plane-wave") {
    // Spatial momentum must be a multiple of 2 pi / L to stay periodic.
    const double p = get("p", 2.0 * M_PI / length);
    const Spinor w = on_shell_spinor(p, space_axis);
    for (int j = 0; j < n; ++j) {
      const double x = x0 + j * dx;
      out.col(j) = w * std::exp(kImag * (p * x));
    }
    return out;
  }
  if (name == "gaussian") {
    const double sigma = get("sigma", 0.5);
    const double center = get("center", x0 + 0.5 * length);
    const double k0 = get("k0", 2.0 * M_PI / length);
    // Chirality-mixing weights so that xiBar psi is nonzero for either sign.
    Spinor w;
    w << Complex(1.0, 0.0), Complex(0.6, -0.2), Complex(-0.7, 0.1), Complex(0.3, 0.4);
    w /= w.norm();
    for (int j = 0; j < n; ++j) {
      const double x = x0 + j * dx;
      // Sum over periodic images: smooth across the wrap.
      Complex envelope = 0.0;
      for (int image = -2; image <= 2; ++image) {
        const double xi = x + image * length - center;
        envelope += std::exp(-xi * xi / (2.0 * sigma * sigma)) *
                    std::exp(kImag * (k0 * (x + image * length)));
      }
      out.col(j) = w * envelope;
    }
    return out;
  }
  throw ConfigError("unknown initial data '" + name +
                    "'; known: rest-plane-wave boosted-plane-wave gaussian");
}

std::vector<std::string> initial_data_names() {
  return {"rest-plane-wave", "boosted-plane-wave", "gaussian"};
}

ResidualLevels dirac_residual_report(const std::vector<SpinorGridField>& blocks,
                                     const PotentialField& field,
                                     const GammaRepresentation& rep) {
  ResidualLevels out;
  for (const auto& block : blocks) {
    SpinorGridField r = dirac_residual(block, field, rep);
    out.h_and_norm.emplace_back(block.grid.spacing[0], interior_max_norm(r));
  }
  out.estimate = convergence_order(out.h_and_norm);
  return out;
}

}  // namespace dirac1c
