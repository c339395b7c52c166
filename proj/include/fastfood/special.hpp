#pragma once

#include <cstddef>

namespace fastfood {

// Inverse standard normal CDF (Wichura's PPND16), ~1e-16 relative accuracy.
// Requires p strictly inside (0,1).
double inv_normal_cdf(double p);

// Regularized lower incomplete gamma P(a,x) = gamma(a,x)/Gamma(a), a > 0.
double gamma_p(double a, double x);

// Chi distribution CDF with k degrees of freedom: P(k/2, r^2/2).
double chi_cdf(double r, double k);

// Surface area of the unit sphere S_k embedded in R^{k+1}:
// |S_k| = 2 pi^{(k+1)/2} / Gamma((k+1)/2).
double sphere_surface(int k);

// Gamma(nu+1) * (2/r)^nu * J_nu(r): Bessel J normalized so the r -> 0 limit
// is 1. Ascending series, term-ratio cutoff 1e-16, at least 40 terms.
// Valid for nu >= 0 and 0 <= r <= 30.
double bessel_j_normalized(double nu, double r);

// Plain Bessel J_nu(r) for moderate nu (test/reference use).
double bessel_j(double nu, double r);

}  // namespace fastfood
