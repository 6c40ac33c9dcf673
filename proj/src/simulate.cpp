#include "bridgeflow/simulate.hpp"

#include <cmath>

#include "bridgeflow/errors.hpp"
#include "bridgeflow/finite_bridge.hpp"

namespace bridgeflow {

namespace {

constexpr char kGeneratorId[] = "splitmix64";

struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t s) : state(s) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Per-sample substream: the report must not depend on which thread draws
// which sample.
SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 g(seed ^ (0xD1B54A32D192ED03ull * (index + 1)));
    g.next();
    return g;
}

// Inverse CDF over weights in fixed index order; zero-weight states are never
// selected.
std::size_t draw(std::span<const double> weights, double u) {
    double cum = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t j = 0; j < weights.size(); ++j) {
        const double w = weights[j];
        if (w <= 0.0) continue;
        last_positive = j;
        cum += w;
        if (u < cum) return j;
    }
    return last_positive;  // u landed in the rounding tail
}

void validate_sampling_inputs(const Matrix& kernel, std::size_t count) {
    if (count == 0) throw ValidationError("sample count must be positive");
    if (!is_row_stochastic(kernel, 1e-10))
        throw NotStochastic("sampling needs row-stochastic kernels");
}

}  // namespace

SampleReport sample_paths(const PathMeasure& measure, std::size_t count, std::uint64_t seed) {
    if (count == 0) throw ValidationError("sample count must be positive");
    if (!measure.initial.is_probability())
        throw ValidationError("sampling needs a probability initial distribution");
    for (const Matrix& k : measure.kernels)
        if (!is_row_stochastic(k, 1e-10))
            throw NotStochastic("sampling needs row-stochastic kernels");

    const std::size_t n = measure.dim();
    const std::size_t N = measure.horizon();
    std::vector<std::vector<std::uint64_t>> counts(N + 1, std::vector<std::uint64_t>(n, 0));

#pragma omp parallel if (count > 4096)
    {
        std::vector<std::vector<std::uint64_t>> local(N + 1, std::vector<std::uint64_t>(n, 0));
#pragma omp for schedule(static)
        for (long long p = 0; p < static_cast<long long>(count); ++p) {
            SplitMix64 rng = substream(seed, static_cast<std::uint64_t>(p));
            std::size_t x = draw(measure.initial.weights(), rng.next_unit());
            ++local[0][x];
            for (std::size_t t = 0; t < N; ++t) {
                x = draw(measure.kernels[t].row(x), rng.next_unit());
                ++local[t + 1][x];
            }
        }
#pragma omp critical
        for (std::size_t t = 0; t <= N; ++t)
            for (std::size_t i = 0; i < n; ++i) counts[t][i] += local[t][i];
    }

    const std::vector<Distribution> exact = marginal_flow(measure.initial, measure.kernels);

    SampleReport report;
    report.num_paths = count;
    report.seed = seed;
    report.generator = kGeneratorId;
    report.counts = std::move(counts);
    for (std::size_t t = 0; t <= N; ++t) {
        Vector emp(n);
        for (std::size_t i = 0; i < n; ++i)
            emp[i] = static_cast<double>(report.counts[t][i]) / static_cast<double>(count);
        Distribution d = Distribution::probability(emp, 1e-9);
        report.l1_errors.push_back(l1_distance(d, exact[t]));
        report.empirical_marginals.push_back(std::move(d));
    }
    return report;
}

Matrix empirical_flux(const Matrix& kernel, const Distribution& stat, std::size_t count,
                      std::uint64_t seed) {
    validate_sampling_inputs(kernel, count);
    if (!stat.is_probability() || stat.dim() != kernel.rows())
        throw ValidationError("flux sampling needs a probability vector matching the kernel");

    const std::size_t n = kernel.rows();
    std::vector<std::uint64_t> counts(n * n, 0);

#pragma omp parallel if (count > 4096)
    {
        std::vector<std::uint64_t> local(n * n, 0);
#pragma omp for schedule(static)
        for (long long s = 0; s < static_cast<long long>(count); ++s) {
            SplitMix64 rng = substream(seed, static_cast<std::uint64_t>(s));
            const std::size_t x = draw(stat.weights(), rng.next_unit());
            const std::size_t y = draw(kernel.row(x), rng.next_unit());
            ++local[x * n + y];
        }
#pragma omp critical
        for (std::size_t i = 0; i < n * n; ++i) counts[i] += local[i];
    }

    Matrix flux(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            flux(i, j) = static_cast<double>(counts[i * n + j]) / static_cast<double>(count);
    return flux;
}

}  // namespace bridgeflow
