#pragma once

#include <cstddef>
#include <vector>

namespace fastfood {

struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre rule on [-1,1] (weight 1), Newton iteration on P_n.
QuadRule gauss_legendre(size_t n);

// Gauss rule on [-1,1] for the ultraspherical weight (1-t^2)^alpha,
// alpha > -1, computed by Golub-Welsch on the three-term recurrence.
// Integrates polynomials of degree <= 2n-1 against the weight exactly.
QuadRule gauss_ultraspherical(size_t n, double alpha);

}  // namespace fastfood
