#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bridgeflow/distribution.hpp"
#include "bridgeflow/entropy.hpp"
#include "bridgeflow/matrix.hpp"

namespace bridgeflow {

// Monte-Carlo validation report. Counts are exact integers, so the report is
// identical for any thread count.
struct SampleReport {
    std::size_t num_paths = 0;
    std::vector<Distribution> empirical_marginals;  // one per time 0..N
    std::vector<double> l1_errors;                  // against the exact flow
    std::uint64_t seed = 0;
    std::string generator;                           // RNG identity
    std::vector<std::vector<std::uint64_t>> counts;  // visit counts per time
};

// Draws `count` independent paths of the measure with per-path substreams
// derived from (seed, path index). Kernels must be row-stochastic.
SampleReport sample_paths(const PathMeasure& measure, std::size_t count, std::uint64_t seed);

// Samples stationary one-step pairs (x, x') with x ~ stat, x' ~ kernel row x;
// returns empirical edge frequencies.
Matrix empirical_flux(const Matrix& kernel, const Distribution& stat, std::size_t count,
                      std::uint64_t seed);

}  // namespace bridgeflow
