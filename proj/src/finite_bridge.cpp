#include "bridgeflow/finite_bridge.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "bridgeflow/entropy.hpp"
#include "bridgeflow/errors.hpp"
#include "bridgeflow/kernels.hpp"

namespace bridgeflow {

BridgeProblem::BridgeProblem(std::vector<Matrix> kernels_, Distribution nu0_, Distribution nuN_,
                             std::optional<Distribution> mu0_)
    : kernels(std::move(kernels_)),
      nu0(std::move(nu0_)),
      nuN(std::move(nuN_)),
      mu0(std::move(mu0_)) {
    if (kernels.empty()) throw ValidationError("bridge problem needs horizon N >= 1");
    const std::size_t n = nu0.dim();
    if (nuN.dim() != n) throw ValidationError("endpoint marginals must share dimension");
    if (!nu0.is_probability() || !nuN.is_probability())
        throw ValidationError("endpoint marginals must be probability vectors");
    for (const Matrix& m : kernels) {
        if (m.rows() != n || !m.square()) throw ValidationError("kernel dimension mismatch");
        if (!is_nonnegative(m)) throw ValidationError("prior kernel has negative entries");
    }
    if (mu0) {
        if (mu0->dim() != n) throw ValidationError("prior initial dimension mismatch");
        if (!mu0->strictly_positive())
            throw ValidationError("prior initial must be strictly positive");
    }
}

FeasibilityReport check_feasibility(const std::vector<Matrix>& kernels) {
    if (kernels.empty()) throw ValidationError("feasibility check needs at least one kernel");
    Matrix product = kernels.front();
    for (std::size_t t = 1; t < kernels.size(); ++t)
        product = kernels::multiply(product, kernels[t]);

    FeasibilityReport report;
    report.all_positive = true;
    for (std::size_t i = 0; i < product.rows(); ++i)
        for (std::size_t j = 0; j < product.cols(); ++j)
            if (!(product(i, j) > 0.0)) {
                report.all_positive = false;
                report.zero_entries.emplace_back(i, j);
            }
    report.product = std::move(product);
    return report;
}

FeasibilityReport check_feasibility(const BridgeProblem& prob) {
    return check_feasibility(prob.kernels);
}

namespace {

// nu ./ phi with the conventions: 0/0 := 0, and positive mass over a zero
// potential is structurally infeasible.
void couple_boundary(const Distribution& nu, const Vector& phi, Vector& out, const char* side) {
    for (std::size_t i = 0; i < phi.size(); ++i) {
        if (nu[i] > 0.0) {
            if (phi[i] == 0.0)
                throw InfeasibleSupport(std::string(side) + " marginal places mass at state " +
                                        std::to_string(i) +
                                        " which the prior cannot transport");
            out[i] = nu[i] / phi[i];
        } else {
            out[i] = 0.0;
        }
    }
}

}  // namespace

std::pair<SchroedingerPair, BridgeSolution> solve(const BridgeProblem& prob,
                                                  const SolveOptions& options) {
    const std::size_t n = prob.dim();
    const std::size_t N = prob.horizon();

    SchroedingerPair pair;
    pair.phi.assign(N + 1, Vector(n, 0.0));
    pair.phihat.assign(N + 1, Vector(n, 0.0));
    pair.phi[N].assign(n, 1.0 / static_cast<double>(n));

    std::vector<std::pair<std::size_t, double>> trace;
    Vector candidate(n);
    double residual = 0.0;
    double last_finite = std::numeric_limits<double>::infinity();
    bool converged = false;
    std::size_t iterations = 0;

    for (std::size_t iter = 1; iter <= options.max_iters; ++iter) {
        iterations = iter;

        for (std::size_t t = N; t-- > 0;)
            kernels::multiply_vec(prob.kernels[t], pair.phi[t + 1], pair.phi[t]);
        couple_boundary(prob.nu0, pair.phi[0], pair.phihat[0], "initial");
        for (std::size_t t = 0; t < N; ++t)
            kernels::multiply_transpose_vec(prob.kernels[t], pair.phihat[t], pair.phihat[t + 1]);

        residual = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            residual += std::abs(pair.phi[N][j] * pair.phihat[N][j] - prob.nuN[j]);
        // Incompatible marginal pairs make the potentials collapse through
        // under/overflow; stop with the last meaningful residual.
        if (!std::isfinite(residual)) throw NonConvergence(iter, last_finite);
        last_finite = residual;
        if (options.record_trace) trace.emplace_back(iter, residual);

        couple_boundary(prob.nuN, pair.phihat[N], candidate, "terminal");
        const double scale = l1_norm(candidate);
        // Movement of the terminal potential between sweeps, scale-free.
        const double phi_norm = l1_norm(pair.phi[N]);
        double delta = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            delta += std::abs(candidate[j] / scale - pair.phi[N][j] / phi_norm);

        if (residual <= options.tol && delta <= options.tol) {
            converged = true;
            break;
        }
        // Keep the terminal potential at unit mass so repeated sweeps cannot
        // overflow; ray scaling leaves every observable unchanged.
        for (std::size_t j = 0; j < n; ++j) pair.phi[N][j] = candidate[j] / scale;
    }

    if (!converged) throw NonConvergence(iterations, residual);

    BridgeSolution solution;
    solution.policy = assemble_policy(pair, prob.kernels);
    solution.flow = marginal_flow(prob.nu0, solution.policy);
    solution.iterations = iterations;
    solution.residual = residual;
    solution.trace = std::move(trace);

    double objective = 0.0;
    for (std::size_t t = 0; t < N; ++t) {
        const Vector& p = solution.flow[t].weights();
        for (std::size_t i = 0; i < n; ++i) {
            if (p[i] == 0.0) continue;
            objective += relative_entropy(solution.policy[t].row(i), prob.kernels[t].row(i)) * p[i];
        }
    }
    solution.objective = objective;

    return {std::move(pair), std::move(solution)};
}

std::vector<Matrix> assemble_policy(const SchroedingerPair& pair,
                                    const std::vector<Matrix>& kernels) {
    const std::size_t N = kernels.size();
    if (pair.phi.size() != N + 1)
        throw ValidationError("potentials and kernels disagree on the horizon");
    const std::size_t n = kernels.empty() ? 0 : kernels.front().rows();

    std::vector<Matrix> policy;
    policy.reserve(N);
    for (std::size_t t = 0; t < N; ++t) {
        Matrix pi(n, n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double phi_ti = pair.phi[t][i];
            if (phi_ti > 0.0) {
                for (std::size_t j = 0; j < n; ++j) {
                    const double m = kernels[t](i, j);
                    if (m == 0.0) continue;  // support containment, exact
                    pi(i, j) = m * (pair.phi[t + 1][j] / phi_ti);
                }
            } else {
                // Unreachable state (the bridge puts no mass here). Emit the
                // normalized prior row to keep the kernel stochastic.
                double sum = 0.0;
                for (std::size_t j = 0; j < n; ++j) sum += kernels[t](i, j);
                if (sum == 0.0)
                    throw ZeroPotential("zero potential at state " + std::to_string(i) +
                                        ", time " + std::to_string(t) +
                                        " with no outgoing prior weight");
                for (std::size_t j = 0; j < n; ++j) pi(i, j) = kernels[t](i, j) / sum;
            }
        }
        policy.push_back(std::move(pi));
    }
    return policy;
}

std::vector<Distribution> marginal_flow(const Distribution& initial,
                                        const std::vector<Matrix>& policy) {
    if (!initial.is_probability())
        throw ValidationError("flow must start from a probability vector");
    for (const Matrix& pi : policy) {
        if (pi.rows() != initial.dim() || !pi.square())
            throw ValidationError("policy dimension mismatch");
        if (!is_row_stochastic(pi, 1e-10))
            throw ValidationError("policy kernels must be row-stochastic");
    }

    std::vector<Distribution> flow;
    flow.reserve(policy.size() + 1);
    flow.push_back(initial);
    Vector p = initial.weights();
    for (const Matrix& pi : policy) {
        p = kernels::multiply_transpose_vec(pi, p);
        // Stochastic propagation preserves mass; allow rounding drift only.
        flow.push_back(Distribution::probability(p, 1e-9));
    }
    return flow;
}

}  // namespace bridgeflow
