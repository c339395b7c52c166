#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fastfood {

// Minimal row-major dense matrix.
struct Matrix {
    size_t rows = 0;
    size_t cols = 0;
    std::vector<double> a;

    Matrix() = default;
    Matrix(size_t r, size_t c, double fill = 0.0) : rows(r), cols(c), a(r * c, fill) {}

    double& at(size_t i, size_t j) { return a[i * cols + j]; }
    double at(size_t i, size_t j) const { return a[i * cols + j]; }
    double* row(size_t i) { return a.data() + i * cols; }
    const double* row(size_t i) const { return a.data() + i * cols; }
    std::span<const double> row_span(size_t i) const { return {row(i), cols}; }
};

std::vector<double> matvec(const Matrix& m, std::span<const double> x);

// C = A^T A (p x p), accumulated over rows of A. Parallel over output tiles;
// result is independent of the thread count.
Matrix gram_tt(const Matrix& a);

// Solves (A + lambda I) x = b for symmetric positive definite A, in-place
// Cholesky. Throws numerical_error when the factorization breaks down.
std::vector<double> cholesky_solve(Matrix a, std::span<const double> b, double lambda);

// Symmetric eigendecomposition A = U diag(w) U^T by cyclic Jacobi rotations.
// Off-diagonal Frobenius norm is driven below tol * ||A||_F.
struct EigenResult {
    Matrix u;                   // columns are eigenvectors
    std::vector<double> w;      // eigenvalues, matching U's columns
};

// Serial reference implementation (cyclic-by-row sweeps).
EigenResult jacobi_eigen_serial(Matrix a, double tol = 1e-12, int max_sweeps = 64);

// Round-robin parallel version: each round rotates n/2 disjoint pivot pairs,
// applied as one two-sided update (row phase then column phase) so the result
// does not depend on the thread schedule.
EigenResult jacobi_eigen(Matrix a, double tol = 1e-12, int max_sweeps = 64);

}  // namespace fastfood
