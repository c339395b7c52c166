#include "fastfood/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fastfood/linalg.hpp"

namespace fastfood {

QuadRule gauss_legendre(size_t n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1");
    QuadRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const size_t half = (n + 1) / 2;
    for (size_t i = 0; i < half; ++i) {
        // Chebyshev-like initial guess, then Newton on P_n.
        double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (size_t k = 2; k <= n; ++k) {
                double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

QuadRule gauss_ultraspherical(size_t n, double alpha) {
    if (n < 1) throw std::invalid_argument("gauss_ultraspherical: n >= 1");
    if (alpha <= -1.0)
        throw std::invalid_argument("gauss_ultraspherical: alpha > -1 required");

    // Monic recurrence p_{k+1} = t p_k - beta_k p_{k-1} for (1-t^2)^alpha:
    //   beta_1 = 1/(2 alpha + 3)
    //   beta_k = k (k + 2 alpha) / ((2k + 2 alpha + 1)(2k + 2 alpha - 1)), k >= 2
    // mu0 = sqrt(pi) Gamma(alpha+1) / Gamma(alpha+3/2)
    const double mu0 =
        std::exp(0.5 * std::log(M_PI) + std::lgamma(alpha + 1.0) -
                 std::lgamma(alpha + 1.5));

    Matrix jac(n, n, 0.0);
    for (size_t k = 1; k < n; ++k) {
        double beta;
        if (k == 1)
            beta = 1.0 / (2.0 * alpha + 3.0);
        else
            beta = k * (k + 2.0 * alpha) /
                   ((2.0 * k + 2.0 * alpha + 1.0) * (2.0 * k + 2.0 * alpha - 1.0));
        double off = std::sqrt(beta);
        jac.at(k - 1, k) = off;
        jac.at(k, k - 1) = off;
    }

    EigenResult eig = jacobi_eigen_serial(std::move(jac), 1e-14, 128);
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return eig.w[a] < eig.w[b]; });

    QuadRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (size_t i = 0; i < n; ++i) {
        size_t k = order[i];
        rule.nodes[i] = eig.w[k];
        double v0 = eig.u.at(0, k);
        rule.weights[i] = mu0 * v0 * v0;
    }
    return rule;
}

}  // namespace fastfood
