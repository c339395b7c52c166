#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fastfood/seed.hpp"

namespace fastfood {

// iid signs in {+1,-1}, each with probability 1/2.
std::vector<double> rademacher_diag(size_t d, SeedSpec seed);

// iid standard normal entries (inverse-CDF transform of counter draws).
std::vector<double> gaussian_diag(size_t d, SeedSpec seed);

// Uniformly random permutation of {0..d-1} stored as an index lookup.
std::vector<uint32_t> random_permutation(size_t d, SeedSpec seed);

// Inverse of a permutation lookup.
std::vector<uint32_t> invert_permutation(std::span<const uint32_t> perm);

// Radial scale law for the projection rows.
//   ChiRBF(d):        p(r) ~ r^{d-1} e^{-r^2/2} (norm of a d-dim standard normal)
//   MaternConv(d, t): r = |xi_1 + ... + xi_t|, xi_i iid uniform on the unit
//                     ball in R^d
//   Tabulated(d, f):  p(r) ~ r^{d-1} f(r), f sampled on a uniform grid over
//                     [0, r_max]; inverse-CDF draws are linear between grid
//                     nodes, so accuracy is O(1/grid size)
struct RadialSampler {
    enum class Kind { ChiRBF, MaternConv, Tabulated };

    Kind kind = Kind::ChiRBF;
    int dim = 1;
    int conv_order = 1;                // t for MaternConv
    std::vector<double> density_grid;  // f(r) values for Tabulated
    double r_max = 0.0;

    static RadialSampler chi_rbf(int d);
    static RadialSampler matern_conv(int d, int t);
    static RadialSampler tabulated(int d, std::vector<double> density, double r_max);
};

// n iid draws from the sampler's law. Draw i is a pure function of (seed, i).
std::vector<double> radial_draws(const RadialSampler& sampler, size_t n, SeedSpec seed);

// iid degrees with mass p(n) ~ lambda[n] * N(d,n). Throws on negative
// weights or an all-zero vector.
std::vector<int> degree_sampler(int d, std::span<const double> lambda, size_t n,
                                SeedSpec seed);

// Deterministic standard-normal variate keyed by a cell (i,j): inverse CDF of
// a hashed uniform. Same (i,j,master_seed) always gives the same value.
double hashed_gaussian(uint64_t i, uint64_t j, uint64_t master_seed);

// Uniform direction on the unit sphere S^{d-1}; one draw consumes d counter
// words starting at ctr_base.
void uniform_sphere_at(const CounterRng& rng, uint64_t ctr_base, std::span<double> out);

// Uniform point in the unit ball (sphere direction times U^{1/d} radius);
// consumes d+1 counter words starting at ctr_base.
void uniform_ball_at(const CounterRng& rng, uint64_t ctr_base, std::span<double> out);

}  // namespace fastfood
