#include "dirac1c/gridops.hpp"

#include <cmath>

namespace dirac1c {

namespace {

Margin derivative_margin(const SpacetimeGrid& grid, const Margin& in, int axis) {
  Margin out = in;
  if (grid.boundary[axis] == Boundary::trim && grid.extents[axis] > 1) {
    out.lo[axis] += 1;
    out.hi[axis] += 1;
    if (out.lo[axis] + out.hi[axis] >= grid.extents[axis])
      throw std::runtime_error("insufficient margin on trim axis " +
                               std::to_string(axis));
  }
  return out;
}

// Visits every point with in-range stencil neighbours along `axis`;
// fn(p, p_minus, p_plus).
template <typename Fn>
void stencil_pass(const SpacetimeGrid& grid, int axis, Fn&& fn) {
  const int n = grid.extents[axis];
  const long stride = grid.strides()[axis];
  const bool periodic = grid.boundary[axis] == Boundary::periodic;
  const long total = grid.num_points();
  for (long p = 0; p < total; ++p) {
    const int i = int((p / stride) % n);
    long pm, pp;
    if (periodic) {
      pm = p + (i == 0 ? long(n - 1) : -1L) * stride;
      pp = p + (i == n - 1 ? -long(n - 1) : 1L) * stride;
    } else {
      if (i == 0 || i == n - 1) continue;
      pm = p - stride;
      pp = p + stride;
    }
    fn(p, pm, pp);
  }
}

template <typename FieldT>
FieldT derivative_impl(const FieldT& field, int axis, int order) {
  if (axis < 0 || axis > 3) throw std::out_of_range("derivative axis out of range");
  if (order != 1 && order != 2) throw std::invalid_argument("derivative order must be 1 or 2");
  const SpacetimeGrid& g = field.grid;
  FieldT out = FieldT::zeros(g);
  if (g.extents[axis] == 1) {
    out.margin = field.margin;
    return out;
  }
  out.margin = derivative_margin(g, field.margin, axis);
  const double h = g.spacing[axis];
  if (order == 1) {
    const double c = 1.0 / (2.0 * h);
    stencil_pass(g, axis, [&](long p, long pm, long pp) {
      if constexpr (std::is_same_v<FieldT, ScalarGridField>)
        out.values(p) = c * (field.values(pp) - field.values(pm));
      else
        out.values.col(p) = c * (field.values.col(pp) - field.values.col(pm));
    });
  } else {
    const double c = 1.0 / (h * h);
    stencil_pass(g, axis, [&](long p, long pm, long pp) {
      if constexpr (std::is_same_v<FieldT, ScalarGridField>)
        out.values(p) = c * (field.values(pp) - 2.0 * field.values(p) + field.values(pm));
      else
        out.values.col(p) =
            c * (field.values.col(pp) - 2.0 * field.values.col(p) + field.values.col(pm));
    });
  }
  return out;
}

template <typename FieldT>
FieldT box_prime_impl(const FieldT& u, const PotentialField& field) {
  const SpacetimeGrid& g = u.grid;
  FieldT out = FieldT::zeros(g);
  Margin margin = u.margin;

  std::array<FieldT, 4> d1, d2;
  for (int mu = 0; mu < 4; ++mu) {
    d1[mu] = derivative_impl(u, mu, 1);
    d2[mu] = derivative_impl(u, mu, 2);
    margin = Margin::merged(margin, d2[mu].margin);
  }
  out.margin = margin;

  const long total = g.num_points();
  for (long p = 0; p < total; ++p) {
    const Vector4r x = g.point(p);
    const Vector4r a = field.a(x);
    double a_sq = 0.0;
    for (int mu = 0; mu < 4; ++mu) a_sq += metric_sign(mu) * a(mu) * a(mu);
    const Complex c0 = kImag * divergence_a(field, x) - a_sq + 1.0;

    if constexpr (std::is_same_v<FieldT, ScalarGridField>) {
      Complex acc = c0 * u.values(p);
      for (int mu = 0; mu < 4; ++mu) {
        const double gs = metric_sign(mu);
        acc += gs * d2[mu].values(p);
        acc += 2.0 * kImag * gs * a(mu) * d1[mu].values(p);
      }
      out.values(p) = acc;
    } else {
      Spinor acc = c0 * u.values.col(p);
      for (int mu = 0; mu < 4; ++mu) {
        const double gs = metric_sign(mu);
        acc += gs * d2[mu].values.col(p);
        acc += 2.0 * kImag * gs * a(mu) * d1[mu].values.col(p);
      }
      out.values.col(p) = acc;
    }
  }
  return out;
}

}  // namespace

ScalarGridField derivative(const ScalarGridField& field, int axis, int order) {
  return derivative_impl(field, axis, order);
}

SpinorGridField derivative(const SpinorGridField& field, int axis, int order) {
  return derivative_impl(field, axis, order);
}

SpinorGridField dirac_apply(const SpinorGridField& psi, const PotentialField& field,
                            const GammaRepresentation& rep) {
  const SpacetimeGrid& g = psi.grid;
  SpinorGridField out = SpinorGridField::zeros(g);
  Margin margin = psi.margin;
  for (int mu = 0; mu < 4; ++mu) {
    SpinorGridField d = derivative(psi, mu, 1);
    margin = Margin::merged(margin, d.margin);
    out.values += (kImag * rep.gamma[mu]) * d.values;
  }
  out.margin = margin;
  const long total = g.num_points();
  for (long p = 0; p < total; ++p) {
    const Vector4r a = field.a(g.point(p));
    Matrix4c aslash = Matrix4c::Zero();
    for (int mu = 0; mu < 4; ++mu) aslash += a(mu) * rep.gamma[mu];
    out.values.col(p) -= aslash * psi.values.col(p);
  }
  return out;
}

SpinorGridField dirac_residual(const SpinorGridField& psi, const PotentialField& field,
                               const GammaRepresentation& rep) {
  SpinorGridField r = dirac_apply(psi, field, rep);
  r.values -= psi.values;
  return r;
}

ScalarGridField box_prime_apply(const ScalarGridField& u, const PotentialField& field) {
  return box_prime_impl(u, field);
}

SpinorGridField box_prime_apply(const SpinorGridField& u, const PotentialField& field) {
  return box_prime_impl(u, field);
}

ScalarGridField squared_identity_residual(const SpinorGridField& phi,
                                          const PotentialField& field,
                                          const GammaRepresentation& rep) {
  SpinorGridField squared = dirac_apply(dirac_apply(phi, field, rep), field, rep);
  SpinorGridField boxed = box_prime_apply(phi, field);

  ScalarGridField out = ScalarGridField::zeros(phi.grid);
  out.margin = Margin::merged(squared.margin, boxed.margin);
  const long total = phi.grid.num_points();
  for (long p = 0; p < total; ++p) {
    const Matrix4c f = field_matrix_at(field, phi.grid.point(p), rep);
    Spinor r = squared.values.col(p) - phi.values.col(p) + boxed.values.col(p) +
               f * phi.values.col(p);
    out.values(p) = r.cwiseAbs().maxCoeff();
  }
  return out;
}

MaskedScalarField fourth_order_apply(const ScalarGridField& phi, Complex alpha,
                                     const ScalarGridField& u,
                                     const ScalarGridField& d,
                                     const ScalarGridField& w,
                                     const PotentialField& field,
                                     double floor_abs) {
  const SpacetimeGrid& g = phi.grid;
  const long total = g.num_points();

  ScalarGridField inner = box_prime_apply(phi, field);
  ScalarGridField divided = ScalarGridField::zeros(g);
  divided.margin = inner.margin;

  std::vector<std::uint8_t> mask(total, 0);
  for (long p = 0; p < total; ++p) {
    if (std::abs(d.values(p)) >= floor_abs && floor_abs > 0.0) {
      mask[p] = 1;
      divided.values(p) =
          (alpha * inner.values(p) + u.values(p) * phi.values(p)) / d.values(p);
    }
  }

  ScalarGridField outer = box_prime_apply(divided, field);

  MaskedScalarField result;
  result.field = ScalarGridField::zeros(g);
  result.field.margin = outer.margin;
  for (long p = 0; p < total; ++p)
    result.field.values(p) = alpha * outer.values(p) -
                             u.values(p) * divided.values(p) +
                             w.values(p) * phi.values(p);
  result.mask = erode_mask(g, mask, 1);

  const long interior = count_interior(g, result.field.margin);
  if (interior <= 0)
    throw std::runtime_error("insufficient margin for the fourth-order operator");
  long kept = 0;
  for_each_interior(g, result.field.margin,
                    [&](long p, const std::array<int, 4>&) { kept += result.mask[p]; });
  result.coverage = double(kept) / double(interior);
  if (kept == 0)
    throw DegenerateFieldError(
        "degenerate field for this component: the coefficient b (xiBar F xiC "
        "up to a constant) vanishes on the whole grid, so the one-component "
        "reduction does not exist here");
  return result;
}

CurrentFields current(const SpinorGridField& psi, const GammaRepresentation& rep) {
  CurrentFields out;
  out.grid = psi.grid;
  out.margin = psi.margin;
  const long total = psi.grid.num_points();
  std::array<Matrix4c, 4> g0g;
  for (int mu = 0; mu < 4; ++mu) g0g[mu] = rep.gamma[0] * rep.gamma[mu];
  for (int mu = 0; mu < 4; ++mu) out.j[mu] = Eigen::VectorXd::Zero(total);
  for (long p = 0; p < total; ++p) {
    const Spinor v = psi.values.col(p);
    for (int mu = 0; mu < 4; ++mu)
      out.j[mu](p) = (v.adjoint() * g0g[mu] * v).value().real();
  }
  return out;
}

std::pair<CurrentFields, CurrentFields> current_chiral_split(
    const SpinorGridField& psi, const GammaRepresentation& rep) {
  SpinorGridField plus = psi, minus = psi;
  const long total = psi.grid.num_points();
  for (long p = 0; p < total; ++p) {
    plus.values.col(p) = chiral_project(psi.values.col(p), +1, rep);
    minus.values.col(p) = chiral_project(psi.values.col(p), -1, rep);
  }
  return {current(plus, rep), current(minus, rep)};
}

ConvergenceEstimate convergence_order(
    const std::vector<std::pair<double, double>>& h_and_norm) {
  if (h_and_norm.size() < 3)
    throw std::invalid_argument("convergence_order needs >= 3 levels");
  ConvergenceEstimate est;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = int(h_and_norm.size());
  for (const auto& [h, norm] : h_and_norm) {
    const double x = std::log(h);
    const double y = std::log(std::max(norm, 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  est.order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  for (size_t i = 1; i < h_and_norm.size(); ++i) {
    const bool h_decreasing = h_and_norm[i].first < h_and_norm[i - 1].first;
    const bool norm_decreasing = h_and_norm[i].second < h_and_norm[i - 1].second;
    if (h_decreasing != norm_decreasing) est.monotone = false;
  }
  return est;
}

}  // namespace dirac1c
