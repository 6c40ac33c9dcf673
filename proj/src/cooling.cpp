#include "bridgeflow/cooling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bridgeflow/errors.hpp"
#include "bridgeflow/graph.hpp"

namespace bridgeflow {

EnergyModel::EnergyModel(Vector energies_, double kT_) : energies(std::move(energies_)), kT(kT_) {
    if (energies.empty()) throw ValidationError("energy model needs at least one state");
    for (double e : energies)
        if (!std::isfinite(e)) throw ValidationError("energies must be finite");
    if (!(kT > 0.0) || !std::isfinite(kT)) throw ValidationError("kT must be positive");
}

Distribution boltzmann(const EnergyModel& model) {
    const double shift = *std::min_element(model.energies.begin(), model.energies.end());
    Vector w(model.dim());
    double z = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = std::exp(-(model.energies[i] - shift) / model.kT);
        z += w[i];
    }
    for (double& x : w) x /= z;
    return Distribution::probability(w);
}

Matrix metropolis(const EnergyModel& model, const Matrix& proposal) {
    const std::size_t n = model.dim();
    if (!proposal.square() || proposal.rows() != n)
        throw ValidationError("proposal dimension mismatch");
    if (!is_nonnegative(proposal)) throw NotStochastic("proposal has negative entries");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(proposal(i, j) - proposal(j, i)) > 1e-12)
                throw NotSymmetric("proposal is not symmetric");
    if (!is_row_stochastic(proposal, 1e-12)) throw NotStochastic("proposal is not row-stochastic");
    if (!is_strongly_connected(Graph::support_of(proposal)))
        throw ValidationError("proposal chain is not irreducible");

    Matrix p(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double off = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double q = proposal(i, j);
            if (q == 0.0) continue;
            const double accept =
                std::min(std::exp((model.energies[i] - model.energies[j]) / model.kT), 1.0);
            p(i, j) = q * accept;
            off += p(i, j);
        }
        const double diag = 1.0 - off;
        if (diag < -1e-12) throw NotStochastic("proposal rows carry more than unit mass");
        p(i, i) = std::max(diag, 0.0);
    }
    return p;
}

Matrix uniform_proposal(std::size_t n) {
    if (n == 0) throw ValidationError("proposal needs at least one state");
    return Matrix(n, n, 1.0 / static_cast<double>(n));
}

namespace {

void validate_temperatures(const EnergyModel& model, const CoolingPlan& plan) {
    if (!(plan.kT_eff > 0.0) || !std::isfinite(plan.kT_eff))
        throw ValidationError("kT_eff must be positive");
    if (plan.kT_eff > model.kT)
        throw ValidationError("kT_eff must not exceed the model temperature");
}

}  // namespace

BridgeSolution fast_cool(const EnergyModel& model, const CoolingPlan& plan,
                         const Distribution& nu0, const SolveOptions& options,
                         const std::optional<Matrix>& prior) {
    validate_temperatures(model, plan);
    if (plan.horizon == 0) throw ValidationError("fast cooling needs a horizon N >= 1");
    if (nu0.dim() != model.dim()) throw ValidationError("nu0 dimension mismatch");

    const Matrix kernel = prior ? *prior : metropolis(model, plan.proposal);
    const Distribution target = boltzmann(EnergyModel(model.energies, plan.kT_eff));
    BridgeProblem prob(std::vector<Matrix>(plan.horizon, kernel), nu0, target, boltzmann(model));
    return solve(prob, options).second;
}

StationarySolution asymptotic_cool(const EnergyModel& model, const CoolingPlan& plan,
                                   const StationaryOptions& options) {
    validate_temperatures(model, plan);

    const Matrix kernel = metropolis(model, plan.proposal);
    if (!is_fully_indecomposable(kernel))
        throw NotFullyIndecomposable("Metropolis prior is not fully indecomposable");

    const Distribution target = boltzmann(EnergyModel(model.energies, plan.kT_eff));
    StationaryOptions opts = options;
    opts.strict = false;  // already gated above
    StationarySolution sol = solve_stationary(StationaryProblem(kernel, target), opts);

    // The Metropolis prior is reversible with respect to its Boltzmann law,
    // so the steered kernel must be reversible with respect to the target.
    if (check_reversibility(kernel, boltzmann(model)) <= 1e-12 &&
        sol.reversibility_residual > 1e-9)
        throw Error("steered kernel lost reversibility: residual " +
                    std::to_string(sol.reversibility_residual));
    return sol;
}

}  // namespace bridgeflow
