#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "bridgeflow/distribution.hpp"
#include "bridgeflow/finite_bridge.hpp"
#include "bridgeflow/graph.hpp"
#include "bridgeflow/matrix.hpp"

namespace bridgeflow {

// Infinite-horizon steering: find the row-stochastic kernel closest to the
// prior in entropy rate among kernels keeping `target` invariant.
struct StationaryProblem {
    StationaryProblem(Matrix prior, Distribution target);

    std::size_t dim() const { return target.dim(); }

    Matrix prior;         // nonnegative square, no all-zero row
    Distribution target;  // strictly positive probability vector
};

// One-step potentials: phi0 = M phi1, phihat1 = M' phihat0, and both
// componentwise products phi_t o phihat_t equal the target.
struct OneStepPotentials {
    Vector phi0, phi1, phihat0, phihat1;
};

struct StationarySolution {
    Matrix kernel;  // Pi* = Diag(phi0)^-1 M Diag(phi1), row-stochastic
    OneStepPotentials potentials;
    double objective = 0.0;             // entropy rate cost vs the prior
    double invariance_residual = 0.0;   // || Pi*' target - target ||_1
    bool reversible = false;            // reversibility_residual <= 1e-10
    double reversibility_residual = 0.0;
    bool prior_fully_indecomposable = true;
    std::size_t iterations = 0;
    double residual = 0.0;
};

struct StationaryOptions {
    double tol = 1e-10;
    std::size_t max_iters = 100000;
    // When set, a prior that is not fully indecomposable is rejected instead
    // of attempted (full indecomposability is sufficient, not necessary).
    bool strict = false;
};

// Solves the one-step system with both marginals equal to the target by
// reusing the finite-horizon iteration with N = 1.
StationarySolution solve_stationary(const StationaryProblem& prob,
                                    const StationaryOptions& options = {});

// max_ij | stat_i k_ij - stat_j k_ji |, the largest detailed-balance
// violation. Zero iff the kernel is reversible with respect to stat.
double check_reversibility(const Matrix& kernel, const Distribution& stat);

// Left Perron vector of a row-stochastic matrix by damped power iteration,
// normalized to unit mass.
Vector stationary_distribution(const Matrix& stochastic, double tol = 1e-12,
                               std::size_t max_iters = 1000000);

// Reversibility transfer: when the prior is reversible with respect to mu,
// the optimal kernel is reversible with respect to the target. `mu` defaults
// to the stationary law of the prior, which must then be row-stochastic.
struct ReversibilityReport {
    double prior_residual = 0.0;
    double solution_residual = 0.0;
    bool prior_reversible = false;     // prior_residual <= 1e-12
    bool solution_reversible = false;  // solution_residual <= 1e-10
    Vector mu;                         // measure the prior was tested against
};
ReversibilityReport verify_reversibility_preservation(const StationaryProblem& prob,
                                                      const StationarySolution& sol,
                                                      std::optional<Distribution> mu = {});

// Stationary solve with the adjacency matrix as prior; the result maximizes
// entropy rate among kernels on g with the target invariant.
StationarySolution max_entropy_rate_chain(const Graph& g, const Distribution& target,
                                          const StationaryOptions& options = {});

// Does any stochastic kernel on g keep `target` invariant? Existence is the
// feasibility of a transportation polytope on the edge set and is decided
// exactly (target(R) <= target(N(R)) for every vertex set R) up to n = 20;
// a converged solve supplies the witness kernel. Beyond that size the answer
// is the empirical outcome of a bounded solve, flagged as not certified.
struct InvariantExistenceReport {
    bool exists = false;
    bool certified = false;
    std::optional<Matrix> witness;
    std::string note;
};
InvariantExistenceReport invariant_distributions_exist(const Graph& g,
                                                       const Distribution& target);

}  // namespace bridgeflow
