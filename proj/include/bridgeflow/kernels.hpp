#pragma once

#include "bridgeflow/matrix.hpp"

namespace bridgeflow::kernels {

// OpenMP-parallel dense kernels. Each output element is accumulated by a
// single thread in a fixed index order, so results are bitwise identical to
// the serial reference below for any thread count.

// y = M x
void multiply_vec(const Matrix& m, std::span<const double> x, std::span<double> y);
Vector multiply_vec(const Matrix& m, const Vector& x);

// y = M' x
void multiply_transpose_vec(const Matrix& m, std::span<const double> x, std::span<double> y);
Vector multiply_transpose_vec(const Matrix& m, const Vector& x);

// C = A B
Matrix multiply(const Matrix& a, const Matrix& b);

// Serial reference implementations, kept for tests and the benchmark tool.
namespace serial {

void multiply_vec(const Matrix& m, std::span<const double> x, std::span<double> y);
Vector multiply_vec(const Matrix& m, const Vector& x);

void multiply_transpose_vec(const Matrix& m, std::span<const double> x, std::span<double> y);
Vector multiply_transpose_vec(const Matrix& m, const Vector& x);

Matrix multiply(const Matrix& a, const Matrix& b);

}  // namespace serial

}  // namespace bridgeflow::kernels
