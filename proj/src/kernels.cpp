#include "bridgeflow/kernels.hpp"

#include <cstddef>

namespace bridgeflow::kernels {

// Below this dimension the OpenMP fork overhead dominates the work.
namespace {
constexpr std::size_t kParallelCutoff = 128;
}

void multiply_vec(const Matrix& m, std::span<const double> x, std::span<double> y) {
    const std::size_t rows = m.rows(), cols = m.cols();
#pragma omp parallel for schedule(static) if (rows >= kParallelCutoff)
    for (std::size_t i = 0; i < rows; ++i) {
        const double* row = m.data() + i * cols;
        double acc = 0.0;
        for (std::size_t j = 0; j < cols; ++j) acc += row[j] * x[j];
        y[i] = acc;
    }
}

void multiply_transpose_vec(const Matrix& m, std::span<const double> x, std::span<double> y) {
    const std::size_t rows = m.rows(), cols = m.cols();
#pragma omp parallel for schedule(static) if (cols >= kParallelCutoff)
    for (std::size_t j = 0; j < cols; ++j) {
        const double* d = m.data();
        double acc = 0.0;
        for (std::size_t i = 0; i < rows; ++i) acc += d[i * cols + j] * x[i];
        y[j] = acc;
    }
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    const std::size_t n = a.rows(), k = a.cols(), p = b.cols();
    Matrix c(n, p, 0.0);
#pragma omp parallel for schedule(static) if (n >= kParallelCutoff / 4)
    for (std::size_t i = 0; i < n; ++i) {
        double* ci = c.data() + i * p;
        for (std::size_t l = 0; l < k; ++l) {
            const double ail = a(i, l);
            if (ail == 0.0) continue;
            const double* bl = b.data() + l * p;
            for (std::size_t j = 0; j < p; ++j) ci[j] += ail * bl[j];
        }
    }
    return c;
}

Vector multiply_vec(const Matrix& m, const Vector& x) {
    Vector y(m.rows());
    multiply_vec(m, x, y);
    return y;
}

Vector multiply_transpose_vec(const Matrix& m, const Vector& x) {
    Vector y(m.cols());
    multiply_transpose_vec(m, x, y);
    return y;
}

namespace serial {

void multiply_vec(const Matrix& m, std::span<const double> x, std::span<double> y) {
    const std::size_t rows = m.rows(), cols = m.cols();
    for (std::size_t i = 0; i < rows; ++i) {
        const double* row = m.data() + i * cols;
        double acc = 0.0;
        for (std::size_t j = 0; j < cols; ++j) acc += row[j] * x[j];
        y[i] = acc;
    }
}

void multiply_transpose_vec(const Matrix& m, std::span<const double> x, std::span<double> y) {
    const std::size_t rows = m.rows(), cols = m.cols();
    for (std::size_t j = 0; j < cols; ++j) {
        const double* d = m.data();
        double acc = 0.0;
        for (std::size_t i = 0; i < rows; ++i) acc += d[i * cols + j] * x[i];
        y[j] = acc;
    }
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    const std::size_t n = a.rows(), k = a.cols(), p = b.cols();
    Matrix c(n, p, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double* ci = c.data() + i * p;
        for (std::size_t l = 0; l < k; ++l) {
            const double ail = a(i, l);
            if (ail == 0.0) continue;
            const double* bl = b.data() + l * p;
            for (std::size_t j = 0; j < p; ++j) ci[j] += ail * bl[j];
        }
    }
    return c;
}

Vector multiply_vec(const Matrix& m, const Vector& x) {
    Vector y(m.rows());
    multiply_vec(m, x, y);
    return y;
}

Vector multiply_transpose_vec(const Matrix& m, const Vector& x) {
    Vector y(m.cols());
    multiply_transpose_vec(m, x, y);
    return y;
}

}  // namespace serial

}  // namespace bridgeflow::kernels
