#pragma once

// Independent dense/brute-force oracles for the structured-transform tests.
// Everything here is built from first principles (explicit matrices, plain
// elimination) rather than the library's fast paths.

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "fastfood/fastfood.hpp"
#include "fastfood/linalg.hpp"

namespace oracle {

// Dense Hadamard matrix from the doubling recursion, entries +-1.
inline std::vector<double> dense_hadamard(size_t d) {
    std::vector<double> h(d * d, 1.0);
    for (size_t k = 1; k < d; k <<= 1)
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) {
                double s = h[i * d + j];
                h[i * d + (j + k)] = s;
                h[(i + k) * d + j] = s;
                h[(i + k) * d + (j + k)] = -s;
            }
    return h;
}

// Explicit rows of H G P H B from the block's stored diagonals:
//   M[i][j] = sum_k H[i][k] g[k] H[perm[k]][j] b[j]
inline fastfood::Matrix dense_gauss_part(const fastfood::FastfoodBlock& blk) {
    const size_t d = blk.dim;
    if (d > 64) throw std::invalid_argument("dense oracle limited to d <= 64");
    auto h = dense_hadamard(d);
    fastfood::Matrix m(d, d, 0.0);
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            double acc = 0.0;
            for (size_t k = 0; k < d; ++k)
                acc += h[i * d + k] * blk.g[k] * h[blk.perm[k] * d + j];
            m.at(i, j) = acc * blk.b[j];
        }
    return m;
}

// Full projection S H G P H B / (sigma sqrt(d)).
inline fastfood::Matrix dense_block(const fastfood::FastfoodBlock& blk) {
    fastfood::Matrix m = dense_gauss_part(blk);
    const size_t d = blk.dim;
    const double inv = 1.0 / (blk.sigma * std::sqrt(static_cast<double>(d)));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) m.at(i, j) *= blk.s[i] * inv;
    return m;
}

// Gaussian elimination with partial pivoting; independent linear-solve oracle.
inline std::vector<double> gauss_solve(fastfood::Matrix a, std::vector<double> b) {
    const size_t n = a.rows;
    if (a.cols != n || b.size() != n) throw std::invalid_argument("gauss_solve: shape");
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        for (size_t i = k + 1; i < n; ++i)
            if (std::fabs(a.at(i, k)) > std::fabs(a.at(piv, k))) piv = i;
        if (a.at(piv, k) == 0.0) throw std::runtime_error("gauss_solve: singular");
        if (piv != k) {
            for (size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(piv, j));
            std::swap(b[k], b[piv]);
        }
        for (size_t i = k + 1; i < n; ++i) {
            double f = a.at(i, k) / a.at(k, k);
            for (size_t j = k; j < n; ++j) a.at(i, j) -= f * a.at(k, j);
            b[i] -= f * b[k];
        }
    }
    std::vector<double> x(n);
    for (size_t ii = n; ii-- > 0;) {
        double acc = b[ii];
        for (size_t j = ii + 1; j < n; ++j) acc -= a.at(ii, j) * x[j];
        x[ii] = acc / a.at(ii, ii);
    }
    return x;
}

// Classical Legendre polynomial P_n on [-1,1] via the (2n+1) recurrence.
inline double classical_legendre(int n, double t) {
    if (n == 0) return 1.0;
    if (n == 1) return t;
    double pm1 = 1.0, p = t;
    for (int k = 1; k < n; ++k) {
        double pp1 = ((2.0 * k + 1.0) * t * p - k * pm1) / (k + 1.0);
        pm1 = p;
        p = pp1;
    }
    return p;
}

}  // namespace oracle
