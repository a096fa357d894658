#pragma once

#include "dirac1c/gridops.hpp"

namespace dirac1c {

/// 1+1-dimensional Crank-Nicolson evolution: time plus one periodic spatial
/// axis, all four spinor components retained. Exists to manufacture reference
/// Dirac solutions for the reduction and reconstruction experiments.
struct EvolutionProblem {
  GammaRepresentation rep;
  PotentialField field;
  SpacetimeGrid grid;  // extents[0] = steps + 1; one spatial axis > 1
  int space_axis = 1;
  SpinorBlock initial;  // one column per point of the spatial slice at t = origin

  int steps() const { return grid.extents[0] - 1; }
  void validate() const;
};

class EvolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// (I + i dt/2 H) psi_{n+1} = (I - i dt/2 H) psi_n with H at the half step;
/// H = gamma^0 + A_0 + gamma^0 gamma^m (A_m - i d_m), Hermitian on the
/// periodic slice, so the step is a Cayley transform and conserves the norm.
SpinorGridField evolve(const EvolutionProblem& problem);

/// Dense Hamiltonian of the discrete spatial slice at time t (test hook for
/// the hermiticity invariant; evolve() itself uses the sparse form).
Eigen::MatrixXcd dense_hamiltonian(const EvolutionProblem& problem, double t);

/// Relative drift of the discrete norm sum(|psi|^2) dx across time slices.
double norm_drift(const SpinorGridField& block, int space_axis);

/// Largest step-to-step relative norm change.
double max_step_norm_drift(const SpinorGridField& block, int space_axis);

/// Initial-data catalog: rest-plane-wave, boosted-plane-wave, gaussian.
SpinorBlock initial_data(const std::string& name, const SpacetimeGrid& grid,
                         int space_axis, const FieldParams& params,
                         const GammaRepresentation& rep);
std::vector<std::string> initial_data_names();

struct ResidualLevels {
  std::vector<std::pair<double, double>> h_and_norm;
  ConvergenceEstimate estimate;
};

/// Interior max-norm Dirac residual per block plus the fitted order.
ResidualLevels dirac_residual_report(const std::vector<SpinorGridField>& blocks,
                                     const PotentialField& field,
                                     const GammaRepresentation& rep);

}  // namespace dirac1c
