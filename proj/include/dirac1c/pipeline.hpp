#pragma once

#include <random>

#include "dirac1c/config.hpp"
#include "dirac1c/evolver.hpp"
#include "dirac1c/reduction.hpp"
#include "dirac1c/report.hpp"

namespace dirac1c {

using Rng = std::mt19937_64;

/// Low-frequency trigonometric fields with seeded random coefficients, used
/// as arbitrary smooth inputs for operator-identity and negative-control
/// checks. Frequencies along periodic axes are integer multiples of the
/// domain frequency so wrapped samples stay smooth.
ScalarGridField random_trig_scalar(const SpacetimeGrid& grid, Rng& rng, int modes = 3);
SpinorGridField random_trig_spinor(const SpacetimeGrid& grid, Rng& rng, int modes = 3);

GammaRepresentation resolve_representation(const ExperimentConfig& config);
ChiralBasis resolve_basis(const ExperimentConfig& config,
                          const GammaRepresentation& rep);
ReductionContext resolve_context(const ExperimentConfig& config);

/// Evolves the configured problem at refinement `level` (spacings halved
/// level times).
SpinorGridField evolve_level(const ExperimentConfig& config, int level);

/// The full equivalence experiment: evolve at `refine` levels, extract the
/// component, check the fourth-order residual, reconstruct, compare against
/// the evolved truth, check the reconstructed Dirac residual, and run the
/// eta-independence sweep. All randomness flows from `seed`.
Report run_equivalence(const ExperimentConfig& config, std::uint64_t seed,
                       int sigma_tau_draws = 4);

}  // namespace dirac1c
