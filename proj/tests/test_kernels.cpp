#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "fastfood/errors.hpp"
#include "fastfood/kernels.hpp"
#include "fastfood/linalg.hpp"
#include "fastfood/quadrature.hpp"
#include "fastfood/sampling.hpp"
#include "fastfood/special.hpp"
#include "fastfood/stats.hpp"
#include "support/matern_oracle.hpp"
#include "support/oracles.hpp"

using namespace fastfood;

TEST_CASE("rbf kernel") {
    std::vector<double> x{1.0, 2.0}, same{1.0, 2.0};
    CHECK(rbf_kernel(x, same, 1.5) == 1.0);

    double sigma = 0.8;
    std::vector<double> y{1.0 + sigma * std::sqrt(2.0), 2.0};
    CHECK(rbf_kernel(x, y, sigma) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(rbf_kernel(x, y, sigma) == rbf_kernel(y, x, sigma));
    CHECK_THROWS_AS(rbf_kernel(x, y, 0.0), std::invalid_argument);
}

TEST_CASE("bessel series reference values") {
    CHECK(bessel_j(1.0, 1.0) == doctest::Approx(0.4400505857449335).epsilon(1e-12));
    CHECK(bessel_j(0.0, 0.0) == 1.0);
    CHECK(bessel_j_normalized(1.0, 0.0) == 1.0);
}

TEST_CASE("bessel-power kernel") {
    std::vector<double> x{0.0, 0.0}, y{1.0, 0.0}, same{0.0, 0.0};
    CHECK(matern_kernel(x, same, 1.0, 3) == 1.0);
    // d=2 (nu=1), r=1, t=1: 2 J_1(1)
    CHECK(matern_kernel(x, y, 1.0, 1) ==
          doctest::Approx(2.0 * 0.4400505857449335).epsilon(1e-10));

    std::vector<double> far{40.0, 0.0};
    CHECK_THROWS_AS(matern_kernel(x, far, 1.0, 1), std::out_of_range);
}

TEST_CASE("bessel-power kernel agrees with the spectral quadrature oracle") {
    std::vector<double> origin{0.0, 0.0};
    for (int t : {1, 2}) {
        oracle::MaternSpectrum2D spec(t);
        for (double r : {0.5, 1.0, 2.0}) {
            std::vector<double> v{r, 0.0};
            CHECK(std::fabs(matern_kernel(origin, v, 1.0, t) - spec.kernel(r)) <= 1e-3);
        }
    }
}

TEST_CASE("legendre polynomial recurrence") {
    for (int d : {2, 3, 5, 9}) {
        CHECK(legendre_eval(0, d, 0.37) == 1.0);
        CHECK(legendre_eval(1, d, 0.37) == 0.37);
        CHECK(legendre_eval(0, d, 1.0) == 1.0);
        CHECK(legendre_eval(5, d, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    }
    // L_{2,d}(t) = (d t^2 - 1)/(d - 1); d=3, t=0.5 -> -0.125
    CHECK(legendre_eval(2, 3, 0.5) == doctest::Approx(-0.125).epsilon(1e-14));

    // d=3 reduces to the classical Legendre polynomials
    for (int n : {2, 3, 5, 8}) {
        for (int k = 0; k < 20; ++k) {
            double t = -1.0 + 2.0 * (k + 0.5) / 20.0;
            CHECK(legendre_eval(n, 3, t) ==
                  doctest::Approx(oracle::classical_legendre(n, t)).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(legendre_eval(2, 3, 1.1), std::invalid_argument);
}

TEST_CASE("homogeneous legendre extension") {
    CHECK(homogeneous_legendre(0, 3, 0.4, 2.0) == 1.0);
    CHECK(homogeneous_legendre(1, 4, 0.4, 2.0) == doctest::Approx(0.4).epsilon(1e-14));
    // n=2, d=3, r=2, t=1: 4 * (3*0.25 - 1)/2 = -0.5
    CHECK(homogeneous_legendre(2, 3, 1.0, 2.0) == doctest::Approx(-0.5).epsilon(1e-13));
    CHECK_THROWS_AS(homogeneous_legendre(1, 3, 0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(homogeneous_legendre(1, 3, 3.0, 2.0), std::invalid_argument);
}

TEST_CASE("homogeneous polynomial counts") {
    CHECK(count_monomials(3, 0) == 1);
    CHECK(count_monomials(3, 2) == 6);
    for (int n : {0, 1, 5, 20}) CHECK(count_monomials(1, n) == 1);
    CHECK(count_monomials(4, 3) == 20);
    CHECK_THROWS_AS(count_monomials(100, 60), std::overflow_error);
}

TEST_CASE("weighted orthogonality of the Legendre family") {
    for (int d : {3, 4, 6}) {
        auto rule = gauss_ultraspherical(64, 0.5 * (d - 3));
        for (int m = 0; m <= 8; ++m) {
            for (int n = 0; n <= 8; ++n) {
                double inner = 0.0, nm = 0.0, nn = 0.0;
                for (size_t i = 0; i < rule.nodes.size(); ++i) {
                    double lm = legendre_eval(m, d, rule.nodes[i]);
                    double ln = legendre_eval(n, d, rule.nodes[i]);
                    inner += rule.weights[i] * lm * ln;
                    nm += rule.weights[i] * lm * lm;
                    nn += rule.weights[i] * ln * ln;
                }
                if (m != n) CHECK(std::fabs(inner) / std::sqrt(nm * nn) <= 1e-8);
            }
        }
    }
}

TEST_CASE("expansion coefficients from kappa") {
    auto c1 = legendre_coeffs_from_kappa([](double) { return 1.0; }, 5, 6);
    CHECK(c1.lambda[0] == doctest::Approx(1.0).epsilon(1e-13));
    for (size_t n = 1; n < c1.lambda.size(); ++n)
        CHECK(std::fabs(c1.lambda[n]) <= 1e-12);

    auto cx = legendre_coeffs_from_kappa([](double t) { return t; }, 4, 6);
    CHECK(cx.lambda[1] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::fabs(cx.lambda[0]) <= 1e-12);

    // kappa = t^2 at d=3: 1/3 L_0 + 2/3 L_2
    auto cq = legendre_coeffs_from_kappa([](double t) { return t * t; }, 3, 6);
    CHECK(cq.lambda[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(cq.lambda[2] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(std::fabs(cq.lambda[1]) <= 1e-12);

    // even dimension goes through the ultraspherical rule as well:
    // t^2 at d=4 is 1/4 L_0 + 3/4 L_2
    auto cq4 = legendre_coeffs_from_kappa([](double t) { return t * t; }, 4, 6);
    CHECK(cq4.lambda[0] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(cq4.lambda[2] == doctest::Approx(0.75).epsilon(1e-12));

    CHECK_THROWS_AS(legendre_coeffs_from_kappa([](double t) { return -t; }, 3, 4),
                    numerical_error);

    CHECK(cq.normalization() ==
          doctest::Approx(1.0 / 3.0 + 2.0 / 3.0 * count_monomials(3, 2)).epsilon(1e-12));
}

TEST_CASE("addition theorem identity by Monte Carlo") {
    // E_z[L_n(<x,z>) L_n(<x',z>)] = L_n(<x,x'>)/N(d,n), unit x, x', z ~ S^2
    const int d = 3;
    std::vector<double> x{1.0, 0.0, 0.0};
    std::vector<double> xp{std::cos(0.9), std::sin(0.9), 0.0};
    CounterRng rng(SeedSpec{31, 0});
    const size_t m = 200000;
    for (int n = 1; n <= 4; ++n) {
        std::vector<double> z(d);
        double s = 0.0, ss = 0.0;
        for (size_t i = 0; i < m; ++i) {
            uniform_sphere_at(rng, i * d, z);
            double a = legendre_eval(n, d, std::clamp(z[0], -1.0, 1.0));
            double dotp = z[0] * xp[0] + z[1] * xp[1];
            double b = legendre_eval(n, d, std::clamp(dotp, -1.0, 1.0));
            s += a * b;
            ss += a * b * a * b;
        }
        double mc = s / m;
        double se = std::sqrt((ss / m - mc * mc) / m);
        double target = legendre_eval(n, d, std::cos(0.9)) /
                        static_cast<double>(count_monomials(d, n));
        CHECK(std::fabs(mc - target) <= 3.0 * se + 1e-12);
    }
}

TEST_CASE("dot-product estimator basics") {
    LegendreCoeffs only0;
    only0.d = 3;
    only0.lambda = {1.0};
    std::vector<double> x{0.3, -0.2, 0.5}, xp{0.1, 0.4, -0.3};
    CHECK(dotprod_kernel_estimate(x, xp, only0, 50, SeedSpec{37, 0}) ==
          doctest::Approx(1.0).epsilon(1e-12));

    // lambda_1 only, unit vectors: E[Z <x,z><x',z>] = <x,x'>
    LegendreCoeffs only1;
    only1.d = 3;
    only1.lambda = {0.0, 1.0};
    std::vector<double> u{1.0, 0.0, 0.0};
    std::vector<double> v{std::cos(0.7), std::sin(0.7), 0.0};
    const size_t batches = 50, per = 4000;
    std::vector<double> means(batches);
    for (size_t b = 0; b < batches; ++b)
        means[b] = dotprod_kernel_estimate(u, v, only1, per, SeedSpec{37, b + 1});
    double m = mean(means);
    double se = std::sqrt(variance(means) / batches);
    CHECK(std::fabs(m - std::cos(0.7)) <= 3.0 * se);

    std::vector<double> zero{0.0, 0.0, 0.0};
    CHECK_THROWS_AS(dotprod_kernel_estimate(zero, v, only1, 10, SeedSpec{37, 9}),
                    std::invalid_argument);
}

TEST_CASE("dot-product features match the estimator with a shared seed") {
    LegendreCoeffs coeffs;
    coeffs.d = 4;  // power of two: exercises the structured-direction path
    coeffs.lambda = {0.25, 0.0, 0.75};
    std::vector<double> x{0.5, -0.1, 0.3, 0.2}, xp{-0.2, 0.4, 0.1, 0.6};
    const size_t n = 512;
    SeedSpec seed{41, 7};
    auto fx = dotprod_features(x, coeffs, n, seed);
    auto fxp = dotprod_features(xp, coeffs, n, seed);
    double inner = 0.0;
    for (size_t i = 0; i < n; ++i) inner += fx[i] * fxp[i];
    CHECK(inner == doctest::Approx(dotprod_kernel_estimate(x, xp, coeffs, n, seed))
                       .epsilon(1e-12));

    // lambda_0 only: every feature equals sqrt(Z/n)
    LegendreCoeffs c0;
    c0.d = 4;
    c0.lambda = {2.0};
    auto f0 = dotprod_features(x, c0, 16, seed);
    for (double f : f0)
        CHECK(f == doctest::Approx(std::sqrt(2.0 / 16.0)).epsilon(1e-12));
}

TEST_CASE("dot-product feature Gram matrix is PSD") {
    LegendreCoeffs coeffs;
    coeffs.d = 4;
    coeffs.lambda = {0.25, 0.0, 0.75};
    const size_t pts = 20, n = 256;
    CounterRng rng(SeedSpec{43, 0});
    Matrix phi(pts, n);
    for (size_t i = 0; i < pts; ++i) {
        std::vector<double> x(4);
        for (auto& v : x) v = 2.0 * rng.next_uniform() - 1.0;
        auto f = dotprod_features(x, coeffs, n, SeedSpec{43, 1});
        for (size_t j = 0; j < n; ++j) phi.at(i, j) = f[j];
    }
    Matrix gram(pts, pts);
    for (size_t i = 0; i < pts; ++i)
        for (size_t j = 0; j < pts; ++j) {
            double acc = 0.0;
            for (size_t k = 0; k < n; ++k) acc += phi.at(i, k) * phi.at(j, k);
            gram.at(i, j) = acc;
        }
    auto eig = jacobi_eigen_serial(gram);
    for (double w : eig.w) CHECK(w >= -1e-10);
}

TEST_CASE("direct polynomial closed form") {
    std::vector<double> x{1.0, 0.0, 0.0, 0.0};
    std::vector<double> xp{std::cos(1.0), std::sin(1.0), 0.0, 0.0};

    std::vector<double> c0{1.0};
    CHECK(direct_poly_closed_form(x, xp, c0, 4) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(direct_poly_closed_form(x, xp, c0, 3), std::invalid_argument);

    std::vector<double> c{0.0, 0.5, 1.0, 0.25};
    CHECK(direct_poly_closed_form(x, xp, c, 4) ==
          doctest::Approx(direct_poly_closed_form(xp, x, c, 4)).epsilon(1e-13));

    // against Monte Carlo, batched for a standard error
    const size_t batches = 40, per = 5000;
    std::vector<double> means(batches);
    for (size_t b = 0; b < batches; ++b)
        means[b] = direct_poly_mc(x, xp, c, 4, per, SeedSpec{47, b});
    double m = mean(means);
    double se = std::sqrt(variance(means) / batches);
    double closed = direct_poly_closed_form(x, xp, c, 4);
    CHECK(std::fabs(m - closed) <= 3.0 * se);
}

TEST_CASE("exact kernel dispatch") {
    std::vector<double> x{0.4, 0.2, -0.1, 0.3}, xp{0.1, -0.2, 0.5, 0.0};
    CHECK(exact_kernel(RbfSpec{1.2}, x, xp) == rbf_kernel(x, xp, 1.2));
    CHECK(exact_kernel(MaternSpec{1.0, 2}, x, xp) == matern_kernel(x, xp, 1.0, 2));

    DotProductSpec dp;
    dp.coeffs.d = 4;
    dp.coeffs.lambda = {0.25, 0.0, 0.75};
    double rx = std::sqrt(0.16 + 0.04 + 0.01 + 0.09);
    double rxp = std::sqrt(0.01 + 0.04 + 0.25);
    double dot = 0.4 * 0.1 - 0.2 * 0.2 - 0.1 * 0.5;
    double expect = 0.25 + 0.75 * rx * rx * rxp * rxp *
                               legendre_eval(2, 4, dot / (rx * rxp));
    CHECK(exact_kernel(dp, x, xp) == doctest::Approx(expect).epsilon(1e-12));

    CHECK(exact_kernel(AnchoredSpec{1.0, 0.1}, x, xp) ==
          anchored_closed_form(x, xp, 1.0, 0.1));
}

TEST_CASE("anchored closed form limits") {
    // b -> 0 leaves only the translation-invariant part with coefficient a/4
    std::vector<double> x{1.0, 2.0}, xp{0.5, 1.0};
    double a = 1.7;
    double d2 = 0.25 + 1.0;
    CHECK(anchored_closed_form(x, xp, a, 0.0) ==
          doctest::Approx(std::exp(-a / 4.0 * d2)).epsilon(1e-13));
}

TEST_CASE("legendre coefficients text round trip") {
    LegendreCoeffs c;
    c.d = 5;
    c.lambda = {0.125, 0.0, 2.0 / 3.0, 1e-17};
    save_legendre_coeffs(c, "coeffs_tmp.txt");
    auto back = load_legendre_coeffs("coeffs_tmp.txt");
    CHECK(back.d == 5);
    REQUIRE(back.lambda.size() == c.lambda.size());
    for (size_t i = 0; i < c.lambda.size(); ++i) CHECK(back.lambda[i] == c.lambda[i]);
    std::remove("coeffs_tmp.txt");
}

TEST_CASE("quadrature rules integrate exactly") {
    auto gl = gauss_legendre(12);
    double s = 0.0;
    for (size_t i = 0; i < gl.nodes.size(); ++i) {
        double t = gl.nodes[i];
        s += gl.weights[i] * (t * t * t * t * t * t);  // t^6
    }
    CHECK(s == doctest::Approx(2.0 / 7.0).epsilon(1e-13));

    // ultraspherical alpha=1/2: int t^2 (1-t^2)^{1/2} dt = pi/8
    auto gj = gauss_ultraspherical(16, 0.5);
    double s2 = 0.0, s0 = 0.0;
    for (size_t i = 0; i < gj.nodes.size(); ++i) {
        s2 += gj.weights[i] * gj.nodes[i] * gj.nodes[i];
        s0 += gj.weights[i];
    }
    CHECK(s0 == doctest::Approx(M_PI / 2.0).epsilon(1e-12));
    CHECK(s2 == doctest::Approx(M_PI / 8.0).epsilon(1e-12));
}
