#include "bridgeflow/entropy.hpp"

#include <cmath>
#include <limits>

#include "bridgeflow/errors.hpp"
#include "bridgeflow/kernels.hpp"

namespace bridgeflow {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kStochasticTol = 1e-10;
}  // namespace

PathMeasure::PathMeasure(Distribution initial_, std::vector<Matrix> kernels_)
    : initial(std::move(initial_)), kernels(std::move(kernels_)) {
    const std::size_t n = initial.dim();
    for (const Matrix& k : kernels) {
        if (k.rows() != n || k.cols() != n)
            throw ValidationError("path measure kernel dimension mismatch");
        if (!is_nonnegative(k)) throw ValidationError("path measure kernel has negative entries");
    }
}

EdgeDistribution::EdgeDistribution(Matrix joint_) : joint(std::move(joint_)) {
    if (!joint.square()) throw ValidationError("edge distribution must be square");
    if (!is_nonnegative(joint)) throw ValidationError("edge distribution has negative entries");
    double total = 0.0;
    for (std::size_t i = 0; i < joint.rows(); ++i)
        for (double v : joint.row(i)) total += v;
    if (std::abs(total - 1.0) > 1e-12)
        throw ValidationError("edge distribution does not sum to 1");
}

Vector EdgeDistribution::row_marginal() const { return row_sums(joint); }

Vector EdgeDistribution::col_marginal() const {
    Vector out(joint.cols(), 0.0);
    for (std::size_t i = 0; i < joint.rows(); ++i)
        for (std::size_t j = 0; j < joint.cols(); ++j) out[j] += joint(i, j);
    return out;
}

double relative_entropy(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw ValidationError("dimension mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0.0) throw ValidationError("negative weight in divergence argument");
        if (p[i] == 0.0) continue;  // 0 log 0 := 0
        if (q[i] == 0.0) return kInf;
        acc += p[i] * std::log(p[i] / q[i]);
    }
    return acc;
}

double relative_entropy(const Distribution& p, const Distribution& q) {
    return relative_entropy(std::span<const double>(p.weights()),
                            std::span<const double>(q.weights()));
}

double path_relative_entropy(const PathMeasure& p, const PathMeasure& m) {
    if (p.dim() != m.dim() || p.horizon() != m.horizon())
        throw ValidationError("path measures must share dimension and horizon");
    if (!p.initial.is_probability())
        throw ValidationError("numerator path measure must start from a probability vector");
    for (const Matrix& k : p.kernels)
        if (!is_row_stochastic(k, kStochasticTol))
            throw ValidationError("numerator path measure kernels must be row-stochastic");

    double total = relative_entropy(p.initial.weights(), m.initial.weights());
    if (std::isinf(total)) return kInf;

    Vector flow = p.initial.weights();
    for (std::size_t t = 0; t < p.horizon(); ++t) {
        for (std::size_t i = 0; i < flow.size(); ++i) {
            if (flow[i] == 0.0) continue;
            double d = relative_entropy(p.kernels[t].row(i), m.kernels[t].row(i));
            if (std::isinf(d)) return kInf;
            total += d * flow[i];
        }
        flow = kernels::multiply_transpose_vec(p.kernels[t], flow);
    }
    return total;
}

double entropy_rate_objective(const Matrix& pi, const Matrix& m, const Distribution& stat) {
    const std::size_t n = stat.dim();
    if (pi.rows() != n || !pi.square() || m.rows() != n || !m.square())
        throw ValidationError("dimension mismatch");
    if (!stat.is_probability()) throw ValidationError("stat must be a probability vector");
    if (!is_row_stochastic(pi, kStochasticTol))
        throw ValidationError("pi must be row-stochastic");

    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (stat[i] == 0.0) continue;
        double d = relative_entropy(pi.row(i), m.row(i));
        if (std::isinf(d)) return kInf;
        total += d * stat[i];
    }
    return total;
}

EdgeIdentity edge_identity_check(const Matrix& pi, const Matrix& m, const Distribution& stat,
                                 const Distribution& m0) {
    const std::size_t n = stat.dim();
    if (pi.rows() != n || !pi.square() || m.rows() != n || !m.square() || m0.dim() != n)
        throw ValidationError("dimension mismatch");

    double lhs = 0.0;
    for (std::size_t i = 0; i < n && !std::isinf(lhs); ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double pij = pi(i, j) * stat[i];
            if (pij == 0.0) continue;
            const double mij = m(i, j) * m0[i];
            if (mij == 0.0) {
                lhs = kInf;
                break;
            }
            lhs += pij * std::log(pij / mij);
        }
    }

    double rhs = entropy_rate_objective(pi, m, stat);
    if (!std::isinf(rhs)) {
        double d0 = relative_entropy(stat.weights(), m0.weights());
        rhs = std::isinf(d0) ? kInf : rhs + d0;
    }
    return {lhs, rhs};
}

}  // namespace bridgeflow
