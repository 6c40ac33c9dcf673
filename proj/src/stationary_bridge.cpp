#include "bridgeflow/stationary_bridge.hpp"

#include <cmath>
#include <cstdint>
#include <string>

#include "bridgeflow/entropy.hpp"
#include "bridgeflow/errors.hpp"
#include "bridgeflow/kernels.hpp"

namespace bridgeflow {

StationaryProblem::StationaryProblem(Matrix prior_, Distribution target_)
    : prior(std::move(prior_)), target(std::move(target_)) {
    if (!prior.square() || prior.rows() != target.dim())
        throw ValidationError("prior and target dimensions disagree");
    if (!is_nonnegative(prior)) throw ValidationError("prior has negative entries");
    if (!target.is_probability() || !target.strictly_positive())
        throw ValidationError("target must be a strictly positive probability vector");
}

StationarySolution solve_stationary(const StationaryProblem& prob,
                                    const StationaryOptions& options) {
    const Vector sums = row_sums(prob.prior);
    for (std::size_t i = 0; i < sums.size(); ++i)
        if (sums[i] == 0.0)
            throw ZeroRow("prior row " + std::to_string(i) + " has no outgoing weight");

    const bool fi = is_fully_indecomposable(prob.prior);
    if (!fi && options.strict)
        throw NotFullyIndecomposable(
            "prior is not fully indecomposable; rerun without the strict gate to attempt anyway");

    // The one-step system is the finite bridge with N = 1 and equal marginals.
    BridgeProblem one_step({prob.prior}, prob.target, prob.target);
    auto [pair, bridge] = solve(one_step, {options.tol, options.max_iters, false});

    StationarySolution sol;
    sol.kernel = bridge.policy.front();
    sol.potentials = {pair.phi[0], pair.phi[1], pair.phihat[0], pair.phihat[1]};
    sol.objective = entropy_rate_objective(sol.kernel, prob.prior, prob.target);
    sol.invariance_residual =
        l1_distance(kernels::multiply_transpose_vec(sol.kernel, prob.target.weights()),
                    std::span<const double>(prob.target.weights()));
    sol.reversibility_residual = check_reversibility(sol.kernel, prob.target);
    sol.reversible = sol.reversibility_residual <= 1e-10;
    sol.prior_fully_indecomposable = fi;
    sol.iterations = bridge.iterations;
    sol.residual = bridge.residual;
    return sol;
}

double check_reversibility(const Matrix& kernel, const Distribution& stat) {
    if (!kernel.square() || kernel.rows() != stat.dim())
        throw ValidationError("kernel and stat dimensions disagree");
    double worst = 0.0;
    for (std::size_t i = 0; i < kernel.rows(); ++i)
        for (std::size_t j = i + 1; j < kernel.cols(); ++j)
            worst = std::max(worst, std::abs(stat[i] * kernel(i, j) - stat[j] * kernel(j, i)));
    return worst;
}

Vector stationary_distribution(const Matrix& stochastic, double tol, std::size_t max_iters) {
    if (!is_row_stochastic(stochastic, 1e-8))
        throw ValidationError("stationary distribution needs a row-stochastic matrix");
    const std::size_t n = stochastic.rows();
    Vector x(n, 1.0 / static_cast<double>(n));
    Vector next(n);
    for (std::size_t iter = 0; iter < max_iters; ++iter) {
        kernels::multiply_transpose_vec(stochastic, x, next);
        // Half-step damping removes oscillation on periodic chains without
        // moving the fixed point.
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            next[i] = 0.5 * (next[i] + x[i]);
            sum += next[i];
        }
        double change = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            next[i] /= sum;
            change += std::abs(next[i] - x[i]);
        }
        x.swap(next);
        if (change <= tol) return x;
    }
    throw NonConvergence(max_iters, 0.0);
}

ReversibilityReport verify_reversibility_preservation(const StationaryProblem& prob,
                                                      const StationarySolution& sol,
                                                      std::optional<Distribution> mu) {
    ReversibilityReport report;
    if (mu) {
        if (mu->dim() != prob.dim()) throw ValidationError("mu dimension mismatch");
        report.mu = mu->weights();
    } else {
        if (!is_row_stochastic(prob.prior, 1e-10))
            throw ValidationError(
                "prior is not row-stochastic; supply the reversing measure explicitly");
        report.mu = stationary_distribution(prob.prior);
    }
    report.prior_residual =
        check_reversibility(prob.prior, Distribution::nonnegative(report.mu));
    report.prior_reversible = report.prior_residual <= 1e-12;
    report.solution_residual = check_reversibility(sol.kernel, prob.target);
    report.solution_reversible = report.solution_residual <= 1e-10;
    return report;
}

StationarySolution max_entropy_rate_chain(const Graph& g, const Distribution& target,
                                          const StationaryOptions& options) {
    return solve_stationary(StationaryProblem(adjacency(g), target), options);
}

namespace {

// Exact feasibility of {q >= 0 supported on E, row sums = col sums = target}:
// every vertex set must send its mass somewhere, so target(R) <= target(N(R))
// for all R (and that condition is sufficient, by max-flow duality). A
// feasible q yields the kernel q_ij / target(i). Exponential subset scan,
// only used up to this size.
constexpr std::size_t kExactFeasibilityLimit = 20;

bool invariant_kernel_exists_exact(const Graph& g, const Distribution& target) {
    const std::size_t n = g.vertex_count();
    std::vector<std::uint32_t> out_mask(n, 0);
    for (const auto& [i, j] : g.edges()) out_mask[i] |= (1u << j);

    for (std::uint32_t r = 1; r < (1u << n); ++r) {
        double supply = 0.0;
        std::uint32_t reach = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (r & (1u << i)) {
                supply += target[i];
                reach |= out_mask[i];
            }
        double capacity = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (reach & (1u << j)) capacity += target[j];
        if (supply > capacity + 1e-12) return false;
    }
    return true;
}

}  // namespace

InvariantExistenceReport invariant_distributions_exist(const Graph& g,
                                                       const Distribution& target) {
    if (!target.strictly_positive())
        throw ValidationError("target must be strictly positive");
    if (g.vertex_count() != target.dim()) throw ValidationError("dimension mismatch");

    InvariantExistenceReport report;
    const std::size_t n = g.vertex_count();

    bool all_loops = true;
    for (std::size_t i = 0; i < n && all_loops; ++i) all_loops = g.has_edge(i, i);
    if (all_loops) {
        report.exists = true;
        report.certified = true;
        report.witness = Matrix::identity(n);
        report.note = "all self-loops present; the identity kernel keeps any law invariant";
        return report;
    }

    if (n <= kExactFeasibilityLimit && !invariant_kernel_exists_exact(g, target)) {
        report.exists = false;
        report.certified = true;
        report.note =
            "certified infeasible: some vertex set carries more target mass than its "
            "out-neighborhood can hold";
        return report;
    }
    const bool feasibility_certified = n <= kExactFeasibilityLimit;

    StationaryOptions probe;
    probe.max_iters = 20000;
    try {
        StationarySolution sol = solve_stationary(StationaryProblem(adjacency(g), target), probe);
        report.exists = true;
        report.certified = true;  // the converged kernel is itself a witness
        report.witness = sol.kernel;
        report.note = "witness kernel from the solver";
    } catch (const NonConvergence&) {
        report.exists = feasibility_certified;
        report.certified = feasibility_certified;
        report.note = feasibility_certified
                          ? "certified feasible by the mass-transport condition, but the "
                            "witness solve stalled"
                          : "not certified: bounded solve did not converge";
    } catch (const InfeasibleSupport&) {
        // Feasibility was already certified above for small n; a collapse here
        // is then numerical, not structural.
        report.exists = feasibility_certified;
        report.certified = feasibility_certified;
        report.note = feasibility_certified
                          ? "certified feasible by the mass-transport condition, but the "
                            "witness solve collapsed at the feasibility boundary"
                          : "not certified: solve reported unreachable mass";
    } catch (const ZeroRow&) {
        report.exists = false;
        report.certified = true;
        report.note = "a vertex has no outgoing edge";
    }
    return report;
}

}  // namespace bridgeflow
