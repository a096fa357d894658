#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dirac1c/types.hpp"

namespace dirac1c {

/// Trim axes lose one layer of valid interior per derivative application;
/// periodic axes wrap.
enum class Boundary { periodic, trim };

/// Uniform spacetime grid. Axes of extent 1 are dimensionally reduced:
/// fields are constant along them and derivatives vanish there.
struct SpacetimeGrid {
  std::array<int, 4> extents{1, 1, 1, 1};
  std::array<double, 4> spacing{1.0, 1.0, 1.0, 1.0};
  std::array<double, 4> origin{0.0, 0.0, 0.0, 0.0};
  std::array<Boundary, 4> boundary{Boundary::trim, Boundary::periodic,
                                   Boundary::periodic, Boundary::periodic};

  long num_points() const {
    return long(extents[0]) * extents[1] * extents[2] * extents[3];
  }
  std::array<long, 4> strides() const {
    std::array<long, 4> s;
    s[3] = 1;
    s[2] = extents[3];
    s[1] = s[2] * extents[2];
    s[0] = s[1] * extents[1];
    return s;
  }
  long index(int i0, int i1, int i2, int i3) const {
    auto s = strides();
    return i0 * s[0] + i1 * s[1] + i2 * s[2] + i3 * s[3];
  }
  std::array<int, 4> unravel(long flat) const {
    auto s = strides();
    std::array<int, 4> idx;
    for (int ax = 0; ax < 4; ++ax) {
      idx[ax] = int(flat / s[ax]);
      flat %= s[ax];
    }
    return idx;
  }
  Vector4r point(const std::array<int, 4>& idx) const {
    Vector4r x;
    for (int ax = 0; ax < 4; ++ax) x(ax) = origin[ax] + spacing[ax] * idx[ax];
    return x;
  }
  Vector4r point(long flat) const { return point(unravel(flat)); }

  void validate() const {
    for (int ax = 0; ax < 4; ++ax) {
      if (extents[ax] < 1) throw ConfigError("grid extent must be positive");
      if (!(spacing[ax] > 0.0)) throw ConfigError("grid spacing must be positive");
    }
  }
  bool same_geometry(const SpacetimeGrid& o) const {
    return extents == o.extents && spacing == o.spacing && origin == o.origin &&
           boundary == o.boundary;
  }
};

/// Per-axis count of invalidated layers at the low/high ends of trim axes.
struct Margin {
  std::array<int, 4> lo{0, 0, 0, 0};
  std::array<int, 4> hi{0, 0, 0, 0};

  static Margin merged(const Margin& a, const Margin& b) {
    Margin m;
    for (int ax = 0; ax < 4; ++ax) {
      m.lo[ax] = std::max(a.lo[ax], b.lo[ax]);
      m.hi[ax] = std::max(a.hi[ax], b.hi[ax]);
    }
    return m;
  }
  bool contains(const std::array<int, 4>& idx, const std::array<int, 4>& extents) const {
    for (int ax = 0; ax < 4; ++ax)
      if (idx[ax] < lo[ax] || idx[ax] >= extents[ax] - hi[ax]) return false;
    return true;
  }
};

struct ScalarGridField {
  SpacetimeGrid grid;
  Eigen::VectorXcd values;
  Margin margin;

  static ScalarGridField zeros(const SpacetimeGrid& g) {
    return {g, Eigen::VectorXcd::Zero(g.num_points()), {}};
  }
  static ScalarGridField sample(const SpacetimeGrid& g,
                                const std::function<Complex(const Vector4r&)>& f);
};

struct SpinorGridField {
  SpacetimeGrid grid;
  SpinorBlock values;
  Margin margin;

  static SpinorGridField zeros(const SpacetimeGrid& g) {
    return {g, SpinorBlock::Zero(4, g.num_points()), {}};
  }
  static SpinorGridField sample(const SpacetimeGrid& g,
                                const std::function<Spinor(const Vector4r&)>& f);
};

/// Calls fn(flat, idx) over the margin-valid interior.
void for_each_interior(const SpacetimeGrid& grid, const Margin& margin,
                       const std::function<void(long, const std::array<int, 4>&)>& fn);

long count_interior(const SpacetimeGrid& grid, const Margin& margin);

/// Interior max norms (optionally restricted by a point mask, 1 = valid).
double interior_max_norm(const ScalarGridField& field,
                         const std::vector<std::uint8_t>* mask = nullptr);
double interior_max_norm(const SpinorGridField& field,
                         const std::vector<std::uint8_t>* mask = nullptr);

/// Shrinks the valid set: a point survives only if it and its stencil
/// neighbours (distance <= radius along every active axis) are valid.
std::vector<std::uint8_t> erode_mask(const SpacetimeGrid& grid,
                                     const std::vector<std::uint8_t>& mask,
                                     int radius);

}  // namespace dirac1c
