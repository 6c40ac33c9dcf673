#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bridgeflow {

using Vector = std::vector<double>;

// Dense row-major matrix of doubles. The solvers work with square matrices at
// desk scale (n up to a few thousand); storage is always dense.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

double l1_norm(std::span<const double> v);
double l1_distance(std::span<const double> a, std::span<const double> b);
double max_abs_diff(const Matrix& a, const Matrix& b);

// All entries finite and >= 0.
bool is_nonnegative(const Matrix& m);

// Every row sums to 1 within tol and entries are nonnegative.
bool is_row_stochastic(const Matrix& m, double tol = 1e-12);

Vector row_sums(const Matrix& m);

}  // namespace bridgeflow
