#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fastfood/seed.hpp"

namespace fastfood {

// Expansion of a dot-product kernel kappa in d-dimensional Legendre
// polynomials: kappa(xi) = sum_n lambda[n] L_{n,d}(xi) on [-1,1].
struct LegendreCoeffs {
    int d = 3;
    std::vector<double> lambda;

    // Z = sum_n lambda[n] N(d,n)
    double normalization() const;
};

struct RbfSpec {
    double sigma = 1.0;
};
struct MaternSpec {
    double sigma = 1.0;
    int order = 1;  // convolution order t
};
struct DotProductSpec {
    LegendreCoeffs coeffs;
};
struct DirectPolySpec {
    std::vector<double> coeffs;  // c_p, p = 0..P, all >= 0
};
struct AnchoredSpec {
    double width = 1.0;      // a
    double spread = 0.1;     // b: anchor measure ~ exp(-b ||z||^2 / 2)
};

using KernelSpec =
    std::variant<RbfSpec, MaternSpec, DotProductSpec, DirectPolySpec, AnchoredSpec>;

// Throws std::invalid_argument when parameters are out of range.
void validate_spec(const KernelSpec& spec);

// exp(-||x-x'||^2 / (2 sigma^2))
double rbf_kernel(std::span<const double> x, std::span<const double> xp, double sigma);

// Bessel-power kernel normalized to k(x,x) = 1, with nu = d/2:
// [Gamma(nu+1) (2/r)^nu J_nu(r)]^t at r = ||x-x'|| / sigma. r <= 30.
double matern_kernel(std::span<const double> x, std::span<const double> xp,
                     double sigma, int t);

// Legendre polynomial of degree n in d >= 2 dimensions, normalized so
// L_{n,d}(1) = 1. Three-term recurrence
//   L_{k+1} = ((2k+d-2) t L_k - k L_{k-1}) / (k+d-2).
double legendre_eval(int n, int d, double t);

// r^n L_{n,d}(t/r), the homogeneous extension; r > 0, |t| <= r.
double homogeneous_legendre(int n, int d, double t, double r);

// N(d,n) = (d+n-1)! / (n! (d-1)!), exact; throws std::overflow_error past 64 bits.
uint64_t count_monomials(int d, int n);

// Expansion coefficients of kappa in L_{n,d} up to degree max_degree, via a
// Gauss rule for the weight (1-t^2)^{(d-3)/2}. Negative coefficients below
// -1e-10 raise numerical_error (kernel not positive semidefinite); tiny
// negatives are clamped to zero.
LegendreCoeffs legendre_coeffs_from_kappa(const std::function<double(double)>& kappa,
                                          int d, int max_degree);

// Monte Carlo estimate of kappa(<x,x'>):
//   (Z/m) sum_i |x|^{n_i} |x'|^{n_i} L_{n_i,d}(<x,z_i>/|x|) L_{n_i,d}(<x',z_i>/|x'|)
// with degrees n_i ~ lambda_n N(d,n) and unit directions z_i. Directions come
// from implicit structured blocks when coeffs.d is a power of two, otherwise
// from exact sphere draws (identical marginal law).
double dotprod_kernel_estimate(std::span<const double> x, std::span<const double> xp,
                               const LegendreCoeffs& coeffs, size_t m, SeedSpec seed);

// Per-feature sqrt(Z/n) |x|^{n_i} L_{n_i,d}(<x,z_i>/|x|); the feature inner
// product equals dotprod_kernel_estimate with the same seed and m = n.
std::vector<double> dotprod_features(std::span<const double> x,
                                     const LegendreCoeffs& coeffs, size_t n,
                                     SeedSpec seed);

// Sphere-average polynomial kernel
//   k(x,x') = sum_p c_p E_{v ~ S_{d-1}} [ <x,v>^p <x',v>^p ]
// in closed form (d >= 4): per p,
//   |x|^p |x'|^p (|S_{d-3}|/|S_{d-1}|) sum_{i even} C(p,i) theta^{p-i}
//   (1-theta^2)^{i/2} G((2p-i+1)/2) G((i+1)/2) G((d-2)/2) / G((2p+d)/2)
// with theta the cosine of the angle; odd-i terms vanish.
double direct_poly_closed_form(std::span<const double> x, std::span<const double> xp,
                               std::span<const double> c_p, int d);

// Monte Carlo counterpart over exact uniform sphere directions.
double direct_poly_mc(std::span<const double> x, std::span<const double> xp,
                      std::span<const double> c_p, int d, size_t m, SeedSpec seed);

// Exact kernel value for any spec with a closed-form oracle.
double exact_kernel(const KernelSpec& spec, std::span<const double> x,
                    std::span<const double> xp);

// Locally-anchored Gaussian limit kernel (unit proportionality constant):
// exp[-(a/2) (b/(2a+b)) (|x|^2+|x'|^2) - (a^2/(4a+2b)) |x-x'|^2], b >= 0.
double anchored_closed_form(std::span<const double> x, std::span<const double> xp,
                            double a, double b);

// Plain text round-trip: dimension on the first line, coefficients on the second.
void save_legendre_coeffs(const LegendreCoeffs& coeffs, const std::string& path);
LegendreCoeffs load_legendre_coeffs(const std::string& path);

}  // namespace fastfood
