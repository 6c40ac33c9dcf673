#include "bridgeflow/matrix.hpp"

#include <cmath>

namespace bridgeflow {

double l1_norm(std::span<const double> v) {
    double acc = 0.0;
    for (double x : v) acc += std::abs(x);
    return acc;
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
    return acc;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
    return worst;
}

bool is_nonnegative(const Matrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            double v = m(i, j);
            if (!std::isfinite(v) || v < 0.0) return false;
        }
    return true;
}

bool is_row_stochastic(const Matrix& m, double tol) {
    if (!is_nonnegative(m)) return false;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double sum = 0.0;
        for (double v : m.row(i)) sum += v;
        if (std::abs(sum - 1.0) > tol) return false;
    }
    return true;
}

Vector row_sums(const Matrix& m) {
    Vector sums(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (double v : m.row(i)) sums[i] += v;
    return sums;
}

}  // namespace bridgeflow
