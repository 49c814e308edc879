// types.hpp — shared aliases, error types, and matrix validity checks.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <stdexcept>

namespace spinchaos {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kImaginaryUnit{0.0, 1.0};

// Largest Hilbert-space dimension built by default (2^14 = 16384).
inline constexpr std::size_t kDefaultDimCap = std::size_t{1} << 14;

// Hilbert-space dimension would exceed the configured cap.
struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An operation assumed a symmetry the operator does not have.
struct symmetry_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Solver failure, overflow, or a degenerate numeric range.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid or inconsistent run configuration.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// max_ij |A - A†|
double hermiticity_defect(const Matrix& a);

bool is_hermitian(const Matrix& a, double tol = 1e-12);

// Throws std::invalid_argument when the defect exceeds tol.
void require_hermitian(const Matrix& a, double tol = 1e-12);

// max_i |norm(v) - 1| style check for state vectors.
bool is_normalized(const Vector& v, double tol = 1e-12);

}  // namespace spinchaos
