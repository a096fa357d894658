#include "dirac1c/grid.hpp"

namespace dirac1c {

ScalarGridField ScalarGridField::sample(
    const SpacetimeGrid& g, const std::function<Complex(const Vector4r&)>& f) {
  g.validate();
  ScalarGridField out = zeros(g);
  for (long p = 0; p < g.num_points(); ++p) out.values(p) = f(g.point(p));
  return out;
}

SpinorGridField SpinorGridField::sample(
    const SpacetimeGrid& g, const std::function<Spinor(const Vector4r&)>& f) {
  g.validate();
  SpinorGridField out = zeros(g);
  for (long p = 0; p < g.num_points(); ++p) out.values.col(p) = f(g.point(p));
  return out;
}

void for_each_interior(const SpacetimeGrid& grid, const Margin& margin,
                       const std::function<void(long, const std::array<int, 4>&)>& fn) {
  std::array<int, 4> lo, hi;
  for (int ax = 0; ax < 4; ++ax) {
    lo[ax] = margin.lo[ax];
    hi[ax] = grid.extents[ax] - margin.hi[ax];
    if (lo[ax] >= hi[ax]) return;  // empty interior
  }
  auto s = grid.strides();
  std::array<int, 4> idx;
  for (idx[0] = lo[0]; idx[0] < hi[0]; ++idx[0])
    for (idx[1] = lo[1]; idx[1] < hi[1]; ++idx[1])
      for (idx[2] = lo[2]; idx[2] < hi[2]; ++idx[2])
        for (idx[3] = lo[3]; idx[3] < hi[3]; ++idx[3]) {
          long flat = idx[0] * s[0] + idx[1] * s[1] + idx[2] * s[2] + idx[3];
          fn(flat, idx);
        }
}

long count_interior(const SpacetimeGrid& grid, const Margin& margin) {
  long n = 1;
  for (int ax = 0; ax < 4; ++ax) {
    long w = grid.extents[ax] - margin.lo[ax] - margin.hi[ax];
    if (w <= 0) return 0;
    n *= w;
  }
  return n;
}

double interior_max_norm(const ScalarGridField& field,
                         const std::vector<std::uint8_t>* mask) {
  double m = 0.0;
  for_each_interior(field.grid, field.margin,
                    [&](long p, const std::array<int, 4>&) {
                      if (mask && !(*mask)[p]) return;
                      m = std::max(m, std::abs(field.values(p)));
                    });
  return m;
}

double interior_max_norm(const SpinorGridField& field,
                         const std::vector<std::uint8_t>* mask) {
  double m = 0.0;
  for_each_interior(field.grid, field.margin,
                    [&](long p, const std::array<int, 4>&) {
                      if (mask && !(*mask)[p]) return;
                      m = std::max(m, field.values.col(p).cwiseAbs().maxCoeff());
                    });
  return m;
}

std::vector<std::uint8_t> erode_mask(const SpacetimeGrid& grid,
                                     const std::vector<std::uint8_t>& mask,
                                     int radius) {
  std::vector<std::uint8_t> out = mask;
  auto strides = grid.strides();
  for (int ax = 0; ax < 4; ++ax) {
    if (grid.extents[ax] == 1) continue;
    std::vector<std::uint8_t> next = out;
    const int n = grid.extents[ax];
    const long stride = strides[ax];
    for (long p = 0; p < grid.num_points(); ++p) {
      if (!out[p]) {
        next[p] = 0;
        continue;
      }
      const int i = int((p / stride) % n);
      for (int d = -radius; d <= radius; ++d) {
        if (d == 0) continue;
        int j = i + d;
        if (grid.boundary[ax] == Boundary::periodic)
          j = (j % n + n) % n;
        else if (j < 0 || j >= n)
          continue;  // outside: margins handle trim edges
        if (!out[p + (long(j) - i) * stride]) {
          next[p] = 0;
          break;
        }
      }
    }
    out.swap(next);
  }
  return out;
}

}  // namespace dirac1c
