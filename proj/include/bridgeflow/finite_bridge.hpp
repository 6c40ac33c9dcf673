#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "bridgeflow/distribution.hpp"
#include "bridgeflow/matrix.hpp"

namespace bridgeflow {

// Finite-horizon steering problem: prior kernels M(0..N-1) and prescribed
// endpoint marginals. Kernels are nonnegative and need not be stochastic.
struct BridgeProblem {
    BridgeProblem(std::vector<Matrix> kernels, Distribution nu0, Distribution nuN,
                  std::optional<Distribution> mu0 = {});

    std::size_t horizon() const { return kernels.size(); }
    std::size_t dim() const { return nu0.dim(); }

    std::vector<Matrix> kernels;
    Distribution nu0;
    Distribution nuN;
    // Prior initial weights, strictly positive when attached. Only used for
    // reporting the full path divergence; the steering cost does not need it.
    std::optional<Distribution> mu0;
};

// Potentials of the two-sided system: phi runs the backward recursion
// phi(t) = M(t) phi(t+1), phihat the forward one phihat(t+1) = M(t)' phihat(t),
// and the componentwise products match the endpoint marginals.
struct SchroedingerPair {
    std::vector<Vector> phi;     // index t = 0..N
    std::vector<Vector> phihat;  // index t = 0..N
};

struct BridgeSolution {
    std::vector<Matrix> policy;      // row-stochastic kernels pi*(t)
    std::vector<Distribution> flow;  // p_0..p_N, p_0 = nu0
    double objective = 0.0;          // sum_t sum_i D(pi_i.(t) || m_i.(t)) p_t(i)
    std::size_t iterations = 0;
    double residual = 0.0;  // L1 mismatch of the terminal coupling
    std::vector<std::pair<std::size_t, double>> trace;
};

// G = M(0) ... M(N-1). Positivity of every entry is sufficient for existence
// and uniqueness (up to ray scaling) of the potentials.
struct FeasibilityReport {
    Matrix product;
    bool all_positive = false;
    std::vector<std::pair<std::size_t, std::size_t>> zero_entries;
};

struct SolveOptions {
    double tol = 1e-10;
    std::size_t max_iters = 100000;
    bool record_trace = false;
};

FeasibilityReport check_feasibility(const std::vector<Matrix>& kernels);
FeasibilityReport check_feasibility(const BridgeProblem& prob);

// Fortet-IPF-Sinkhorn iteration: alternately rescale the boundary potentials
// until both couplings hold within tol (L1). Throws NonConvergence when the
// iteration budget runs out and InfeasibleSupport when a marginal puts mass
// where the kernel product transports none.
std::pair<SchroedingerPair, BridgeSolution> solve(const BridgeProblem& prob,
                                                  const SolveOptions& options = {});

// pi*_ij(t) = m_ij(t) * phi(t+1, j) / phi(t, i). Rows at states with zero
// potential are unreachable under the bridge; they fall back to the
// normalized prior row so the kernel stays stochastic on the graph.
std::vector<Matrix> assemble_policy(const SchroedingerPair& pair,
                                    const std::vector<Matrix>& kernels);

// Forward propagation p_{t+1} = Pi(t)' p_t.
std::vector<Distribution> marginal_flow(const Distribution& initial,
                                        const std::vector<Matrix>& policy);

}  // namespace bridgeflow
