#pragma once

#include <optional>
#include <string>

#include "dirac1c/emfield.hpp"
#include "dirac1c/grid.hpp"

namespace dirac1c {

/// Declarative description of an experiment. Parses strictly: unknown keys
/// are rejected, and a config round-trips through JSON losslessly.
struct ExperimentConfig {
  std::string representation = "chiral";

  struct BasisSpec {
    std::string mode = "default";  // default | explicit
    int sign = -1;
    std::optional<std::array<Complex, 4>> xi;
    std::optional<std::array<Complex, 4>> eta;
  } basis;

  struct FieldSpec {
    std::string name = "zero";
    FieldParams params;
  } field;

  struct GridSpec {
    std::array<int, 4> extents{33, 32, 1, 1};
    std::array<double, 4> spacings{0.03125, 2.0 * M_PI / 32, 1.0, 1.0};
    std::array<double, 4> origin{0.0, 0.0, 0.0, 0.0};
    std::array<std::string, 4> boundary{"trim", "periodic", "periodic", "periodic"};
  } grid;

  struct EvolutionSpec {
    std::string initial = "gaussian";
    FieldParams params;
    int space_axis = 1;
  } evolution;

  int refine = 3;

  struct Tolerances {
    double order_min = 1.8;
    double order_max = 2.2;
    double eta_independence = 1e-10;
    double coverage_min = 0.9;
  } tolerances;

  struct Output {
    std::string dir = "out";
    std::string format = "json";
  } output;

  SpacetimeGrid make_grid() const;
  /// The same geometry refined 2^level times in time and space.
  SpacetimeGrid make_grid(int level) const;
};

ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& config);
ExperimentConfig load_config(const std::string& path);

}  // namespace dirac1c
