#pragma once

#include <span>
#include <vector>

#include "bridgeflow/distribution.hpp"
#include "bridgeflow/matrix.hpp"

namespace bridgeflow {

// Markovian measure on paths: initial weights plus one transition kernel per
// step. The measure of a path (x_0..x_N) is initial(x_0) * prod_t K_t(x_t, x_{t+1}).
struct PathMeasure {
    PathMeasure(Distribution initial, std::vector<Matrix> kernels);

    std::size_t horizon() const { return kernels.size(); }
    std::size_t dim() const { return initial.dim(); }

    Distribution initial;
    std::vector<Matrix> kernels;
};

// Joint distribution over a single transition (i, j); sums to 1 within 1e-12.
struct EdgeDistribution {
    explicit EdgeDistribution(Matrix joint);

    Vector row_marginal() const;
    Vector col_marginal() const;

    Matrix joint;
};

// Kullback-Leibler sum p log(p/q) with 0 log 0 := 0. Returns +infinity when
// supp(p) is not contained in supp(q); q need not be a probability vector, so
// the value may be negative.
double relative_entropy(std::span<const double> p, std::span<const double> q);
double relative_entropy(const Distribution& p, const Distribution& q);

// D(p || m) over path space, computed through the additive decomposition
//   D(nu_0 || mu_0) + sum_t sum_i D(pi_i.(t) || m_i.(t)) p_t(i)
// where p_t is the marginal flow of p. Requires p to be a probability measure
// (stochastic kernels, probability initial); m is a general nonnegative prior.
double path_relative_entropy(const PathMeasure& p, const PathMeasure& m);

// Per-step cost sum_i D(pi_i. || m_i.) stat(i). `pi` must be row-stochastic
// within 1e-10 and `stat` a probability vector.
double entropy_rate_objective(const Matrix& pi, const Matrix& m, const Distribution& stat);

// Both sides of the identity relating the divergence of one-step edge joints
// pi(i,j) = pi_ij stat(i), m(i,j) = m_ij m0(i) to the entropy rate cost:
//   lhs = sum_ij pi(i,j) log(pi(i,j)/m(i,j))
//   rhs = entropy_rate_objective(pi, m, stat) + D(stat || m0)
struct EdgeIdentity {
    double lhs;
    double rhs;
};
EdgeIdentity edge_identity_check(const Matrix& pi, const Matrix& m,
                                 const Distribution& stat, const Distribution& m0);

}  // namespace bridgeflow
