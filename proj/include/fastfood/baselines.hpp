#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fastfood/kernels.hpp"
#include "fastfood/linalg.hpp"
#include "fastfood/seed.hpp"

namespace fastfood {

// Dense n x d projection with iid N(0, sigma^{-2}) entries. Entry (i,j) is
// always regenerated from the same hash cell, so the stored matrix and the
// hashed (storage-free) mode produce bit-identical projections.
struct DenseGaussianTransform {
    size_t n = 0;
    size_t dim = 0;
    double sigma = 1.0;
    uint64_t master_seed = 0;
    bool hashed = false;   // when set, Z is regenerated per application
    Matrix z;              // empty in hashed mode

    static DenseGaussianTransform create(size_t dim, size_t n, double sigma,
                                         uint64_t master_seed, bool hashed = false);

    void project(std::span<const double> x, std::span<double> out) const;
    std::vector<double> features(std::span<const double> x) const;
    double kernel_estimate(std::span<const double> x,
                           std::span<const double> xp) const;
    size_t stored_parameter_bytes() const;
};

// Landmark expansion phi(x) = W [k(x_1,x), ..., k(x_n,x)] with W = K_nn^{-1/2}
// from a symmetric eigendecomposition; eigenvalues below the floor are
// dropped, not inverted.
struct NystromMap {
    Matrix landmarks;  // n x d
    Matrix w;          // n x n, symmetric
    KernelSpec spec;

    std::vector<double> features(std::span<const double> x) const;
};

// Samples n landmark rows from data without replacement, forms K_nn and its
// inverse square root. Throws when n > rows or K_nn has an eigenvalue below
// -1e-8 (not positive semidefinite).
NystromMap nystrom_build(const Matrix& data, size_t n, const KernelSpec& spec,
                         SeedSpec seed, double eig_floor = 1e-10);

}  // namespace fastfood
