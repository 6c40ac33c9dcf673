#pragma once

// Shared deterministic instance generators for the test suites.

#include <random>
#include <utility>

#include "bridgeflow/distribution.hpp"
#include "bridgeflow/graph.hpp"
#include "bridgeflow/matrix.hpp"
#include "bridgeflow/stationary_bridge.hpp"

namespace support {

using bridgeflow::Distribution;
using bridgeflow::Matrix;
using bridgeflow::Vector;

inline Vector random_prob_vec(std::mt19937_64& rng, std::size_t n, double min_entry = 0.05) {
    std::uniform_real_distribution<double> uni(min_entry, 1.0);
    Vector w(n);
    double total = 0.0;
    for (double& x : w) {
        x = uni(rng);
        total += x;
    }
    for (double& x : w) x /= total;
    return w;
}

inline Distribution random_prob(std::mt19937_64& rng, std::size_t n, double min_entry = 0.05) {
    return Distribution::probability(random_prob_vec(rng, n, min_entry), 1e-9);
}

inline Matrix random_stochastic(std::mt19937_64& rng, std::size_t n, double min_entry = 0.05) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        Vector row = random_prob_vec(rng, n, min_entry);
        for (std::size_t j = 0; j < n; ++j) m(i, j) = row[j];
    }
    return m;
}

inline Matrix random_nonneg(std::mt19937_64& rng, std::size_t n, double lo = 0.1, double hi = 1.0) {
    std::uniform_real_distribution<double> uni(lo, hi);
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = uni(rng);
    return m;
}

// Random 0/1 pattern of the given density, weights drawn on the support.
inline Matrix random_pattern_weights(std::mt19937_64& rng, std::size_t n, double density,
                                     double lo = 0.2, double hi = 1.0) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::uniform_real_distribution<double> w(lo, hi);
    Matrix m(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (uni(rng) < density) m(i, j) = w(rng);
    return m;
}

// Rejection sampling; the predicate is only used for selection.
inline Matrix random_fully_indecomposable(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> dens(0.45, 0.95);
    for (;;) {
        Matrix m = random_pattern_weights(rng, n, dens(rng));
        if (bridgeflow::is_fully_indecomposable(m)) return m;
    }
}

// Fully indecomposable prior paired with a target some stochastic kernel on
// the same support keeps invariant. Full indecomposability alone does not
// make every positive target reachable (a row whose support carries less
// target mass than the row's own state is a dead end), so the target is drawn
// as the stationary law of a random chain on the support.
inline std::pair<Matrix, Distribution> random_feasible_stationary_instance(std::mt19937_64& rng,
                                                                           std::size_t n) {
    Matrix prior = random_fully_indecomposable(rng, n);
    std::uniform_real_distribution<double> w(0.2, 1.0);
    Matrix chain(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (prior(i, j) != 0.0) {
                chain(i, j) = w(rng);
                sum += chain(i, j);
            }
        for (std::size_t j = 0; j < n; ++j) chain(i, j) /= sum;
    }
    Vector pi = bridgeflow::stationary_distribution(chain, 1e-14);
    return {std::move(prior), Distribution::probability(std::move(pi), 1e-9)};
}

// Prior reversible with respect to mu by construction: M = Diag(mu)^-1 S with
// S symmetric positive.
inline Matrix random_reversible_prior(std::mt19937_64& rng, std::size_t n, Vector& mu_out) {
    std::uniform_real_distribution<double> uni(0.1, 1.0);
    mu_out = random_prob_vec(rng, n, 0.1);
    Matrix s(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) s(i, j) = s(j, i) = uni(rng);
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = s(i, j) / mu_out[i];
    return m;
}

// Row-stochastic and deliberately far from detailed balance: a directed
// cycle blended with a uniform component.
inline Matrix random_nonreversible_stochastic(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> mix(0.5, 0.9);
    const double a = mix(rng);
    Matrix m(n, n, (1.0 - a) / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) m(i, (i + 1) % n) += a;
    return m;
}

inline Matrix random_permutation_matrix(std::mt19937_64& rng, std::size_t n) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    Matrix p(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) p(i, perm[i]) = 1.0;
    return p;
}

}  // namespace support
