// Benchmark: OpenMP kernels against the serial reference, plus a full
// stationary solve at each size. Results must agree bitwise; the OpenMP
// kernels accumulate each output element in the same order as the reference.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "bridgeflow/distribution.hpp"
#include "bridgeflow/kernels.hpp"
#include "bridgeflow/stationary_bridge.hpp"

namespace {

using bridgeflow::Matrix;
using bridgeflow::Vector;
using Clock = std::chrono::steady_clock;

double best_of_ms(int reps, const auto& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = Clock::now();
        fn();
        auto t1 = Clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

Matrix random_matrix(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = uni(rng);
    return m;
}

void report(const char* name, std::size_t n, double serial_ms, double omp_ms, bool equal) {
    std::printf("%-14s %6zu %12.3f %12.3f %9.2fx   %s\n", name, n, serial_ms, omp_ms,
                serial_ms / omp_ms, equal ? "bitwise-equal" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bridgeflow kernel benchmark: serial reference vs OpenMP"};
    std::vector<std::size_t> sizes{256, 512, 1024};
    int reps = 5;
    int threads = 0;
    app.add_option("--sizes", sizes, "matrix dimensions to benchmark");
    app.add_option("--reps", reps, "repetitions per measurement (best-of)");
    app.add_option("--threads", threads, "OpenMP thread count (0: default)");
    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
    std::printf("OpenMP: %d thread(s)\n", omp_get_max_threads());
#else
    std::printf("OpenMP: not available (serial build)\n");
#endif
    std::printf("%-14s %6s %12s %12s %10s\n", "kernel", "n", "serial_ms", "openmp_ms", "speedup");

    std::mt19937_64 rng(42);
    for (std::size_t n : sizes) {
        Matrix m = random_matrix(rng, n);
        Vector x(n);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        for (double& v : x) v = uni(rng);
        Vector ys(n), yp(n);

        double s = best_of_ms(reps, [&] { bridgeflow::kernels::serial::multiply_vec(m, x, ys); });
        double p = best_of_ms(reps, [&] { bridgeflow::kernels::multiply_vec(m, x, yp); });
        report("matvec", n, s, p, ys == yp);

        s = best_of_ms(reps,
                       [&] { bridgeflow::kernels::serial::multiply_transpose_vec(m, x, ys); });
        p = best_of_ms(reps, [&] { bridgeflow::kernels::multiply_transpose_vec(m, x, yp); });
        report("matvec_t", n, s, p, ys == yp);

        if (n <= 1024) {
            Matrix b = random_matrix(rng, n);
            Matrix cs, cp;
            s = best_of_ms(reps, [&] { cs = bridgeflow::kernels::serial::multiply(m, b); });
            p = best_of_ms(reps, [&] { cp = bridgeflow::kernels::multiply(m, b); });
            report("matmul", n, s, p, cs == cp);
        }

        // Full solver at this size: Sinkhorn sweeps are matvec-bound.
        Vector w(n);
        double total = 0.0;
        for (double& v : w) {
            v = 0.5 + uni(rng);
            total += v;
        }
        for (double& v : w) v /= total;
        auto target = bridgeflow::Distribution::probability(w, 1e-9);
        Matrix prior(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) prior(i, j) = 0.05 + uni(rng);
        double solve_ms = best_of_ms(std::max(1, reps / 2), [&] {
            bridgeflow::solve_stationary(bridgeflow::StationaryProblem(prior, target),
                                         {1e-10, 100000, false});
        });
        std::printf("%-14s %6zu %12s %12.3f\n", "stationary", n, "-", solve_ms);
    }
    return 0;
}
