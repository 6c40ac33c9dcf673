#pragma once

#include <cstddef>
#include <optional>

#include "bridgeflow/distribution.hpp"
#include "bridgeflow/finite_bridge.hpp"
#include "bridgeflow/matrix.hpp"
#include "bridgeflow/stationary_bridge.hpp"

namespace bridgeflow {

// Vertex energies together with kT (Boltzmann constant times temperature, in
// the same units as the energies).
struct EnergyModel {
    EnergyModel(Vector energies, double kT);

    std::size_t dim() const { return energies.size(); }

    Vector energies;
    double kT;
};

// Target of a cooling run: destination temperature, proposal chain for the
// Metropolis prior, and (finite-horizon mode only) the steering horizon.
struct CoolingPlan {
    double kT_eff = 0.0;   // 0 < kT_eff <= model kT
    Matrix proposal;       // symmetric, row-stochastic, irreducible
    std::size_t horizon = 0;
};

// pi(i) = exp(-E_i / kT) / Z. Energies are shifted by their minimum before
// exponentiation; the result is invariant under shifts.
Distribution boltzmann(const EnergyModel& model);

// Metropolis kernel p_ij = q_ij min(exp((E_i - E_j)/kT), 1) off the diagonal,
// with the diagonal absorbing the rejected mass. Reversible with respect to
// boltzmann(model).
Matrix metropolis(const EnergyModel& model, const Matrix& proposal);

Matrix uniform_proposal(std::size_t n);

// Finite-horizon steering from nu0 to the Boltzmann law at kT_eff, with the
// Metropolis chain at the model temperature as prior (or `prior` when given).
BridgeSolution fast_cool(const EnergyModel& model, const CoolingPlan& plan,
                         const Distribution& nu0, const SolveOptions& options = {},
                         const std::optional<Matrix>& prior = {});

// Stationary steering: the modified kernel keeping the Boltzmann law at
// kT_eff invariant, closest in entropy rate to the Metropolis prior. The
// result is reversible with respect to the target law.
StationarySolution asymptotic_cool(const EnergyModel& model, const CoolingPlan& plan,
                                   const StationaryOptions& options = {});

}  // namespace bridgeflow
