#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fastfood/kernels.hpp"
#include "fastfood/sampling.hpp"
#include "fastfood/seed.hpp"

namespace fastfood {

// One d x d implicit projection V = S H G P H B / (sigma sqrt(d)); only the
// diagonals and the permutation lookup are stored, never a dense matrix.
// Row i of H diag(g) P H diag(b) has squared norm d ||g||^2 exactly, so with
// s_i = r_i / ||g|| row i of V has norm r_i / sigma.
struct FastfoodBlock {
    std::vector<double> b;       // +-1 diagonal
    std::vector<double> g;       // Gaussian diagonal
    std::vector<double> s;       // radial scales (empty for plain blocks)
    std::vector<uint32_t> perm;  // index lookup for P
    double sigma = 1.0;
    double g_norm = 0.0;
    uint32_t dim = 0;            // power of two

    // H G P H B x into out; scratch holds the permuted intermediate.
    void apply_raw(std::span<const double> x, std::span<double> out,
                   std::span<double> scratch) const;
    // V x = s .* apply_raw(x) / (sigma sqrt(d)). Requires s.
    void apply(std::span<const double> x, std::span<double> out,
               std::span<double> scratch) const;
};

// Draws b, g, perm and the radial scales for the kernel's spectrum
// (RBF -> chi law, Matern -> ball convolution). O(d) memory.
FastfoodBlock build_block(size_t d_pad, const KernelSpec& spec, SeedSpec seed);

// Custom spectra: radial scales from the given sampler.
FastfoodBlock build_block(size_t d_pad, const RadialSampler& radial, double sigma,
                          SeedSpec seed);

// b, g, perm only; used where the unscaled Gauss-like rows are wanted
// (unit directions, anchor generation).
FastfoodBlock build_gauss_block(size_t d_pad, SeedSpec seed);

// Stack of n/d_pad independent blocks realizing an implicit n x d projection.
struct FastfoodTransform {
    std::vector<FastfoodBlock> blocks;
    size_t n = 0;          // feature pairs (rows of V)
    size_t input_dim = 0;
    size_t d_pad = 0;
    KernelSpec spec;
    uint64_t master_seed = 0;

    // When n is not a multiple of d_pad, ceil(n/d_pad) blocks are built and
    // the stacked projection is truncated to n rows.
    static FastfoodTransform create(size_t input_dim, size_t n, KernelSpec spec,
                                    uint64_t master_seed);

    // V x (length n). x may be shorter than d_pad; it is zero-padded.
    void project(std::span<const double> x, std::span<double> out) const;

    // [cos(Vx); sin(Vx)] / sqrt(n), length 2n; phi(x).phi(x) = 1.
    std::vector<double> features(std::span<const double> x) const;

    // phi(x).phi(x') evaluated as mean_j cos([V(x-x')]_j); the difference is
    // formed once before projecting.
    double kernel_estimate(std::span<const double> x,
                           std::span<const double> xp) const;

    size_t stored_parameter_bytes() const;
};

// Anchored feature map: feature i is n^{-1/2} exp(-(a/2) |x - z_i|^2) with
// anchors z_i the rows of plain blocks scaled to variance 1/b per coordinate.
// Anchors live in the padded space; inputs are zero-padded.
struct AnchoredMap {
    std::vector<FastfoodBlock> blocks;  // plain blocks (no s)
    size_t n = 0;
    size_t input_dim = 0;
    size_t d_pad = 0;
    double width = 1.0;   // a
    double spread = 0.1;  // b
    uint64_t master_seed = 0;

    static AnchoredMap create(size_t input_dim, size_t n, double a, double b,
                              uint64_t master_seed);

    std::vector<double> features(std::span<const double> x) const;

    double kernel_estimate(std::span<const double> x,
                           std::span<const double> xp) const;
};

}  // namespace fastfood
