#include "fastfood/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "fastfood/errors.hpp"
#include "fastfood/fastfood.hpp"
#include "fastfood/hadamard.hpp"
#include "fastfood/quadrature.hpp"
#include "fastfood/special.hpp"

namespace fastfood {

namespace {

double sq_dist(std::span<const double> x, std::span<const double> xp) {
    if (x.size() != xp.size())
        throw std::invalid_argument("kernel: dimension mismatch");
    double ss = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        double d = x[i] - xp[i];
        ss += d * d;
    }
    return ss;
}

double norm(std::span<const double> x) {
    double ss = 0.0;
    for (double v : x) ss += v * v;
    return std::sqrt(ss);
}

double dot(std::span<const double> x, std::span<const double> y) {
    double acc = 0.0;
    for (size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
    return acc;
}

}  // namespace

double LegendreCoeffs::normalization() const {
    double z = 0.0;
    double nd = 1.0;
    for (size_t k = 0; k < lambda.size(); ++k) {
        if (k > 0) nd *= static_cast<double>(d + k - 1) / static_cast<double>(k);
        z += lambda[k] * nd;
    }
    return z;
}

void validate_spec(const KernelSpec& spec) {
    if (const auto* rbf = std::get_if<RbfSpec>(&spec)) {
        if (!(rbf->sigma > 0.0)) throw std::invalid_argument("rbf: sigma > 0");
    } else if (const auto* mat = std::get_if<MaternSpec>(&spec)) {
        if (!(mat->sigma > 0.0)) throw std::invalid_argument("matern: sigma > 0");
        if (mat->order < 1) throw std::invalid_argument("matern: order >= 1");
    } else if (const auto* dp = std::get_if<DotProductSpec>(&spec)) {
        if (dp->coeffs.d < 2) throw std::invalid_argument("dotproduct: d >= 2");
        for (double l : dp->coeffs.lambda)
            if (l < 0.0)
                throw std::invalid_argument("dotproduct: coefficients must be >= 0");
    } else if (const auto* poly = std::get_if<DirectPolySpec>(&spec)) {
        for (double c : poly->coeffs)
            if (c < 0.0)
                throw std::invalid_argument("directpoly: coefficients must be >= 0");
    } else if (const auto* anc = std::get_if<AnchoredSpec>(&spec)) {
        if (!(anc->width > 0.0) || !(anc->spread > 0.0))
            throw std::invalid_argument("anchored: width and spread must be positive");
    }
}

double rbf_kernel(std::span<const double> x, std::span<const double> xp, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("rbf_kernel: sigma > 0");
    return std::exp(-sq_dist(x, xp) / (2.0 * sigma * sigma));
}

double matern_kernel(std::span<const double> x, std::span<const double> xp,
                     double sigma, int t) {
    if (!(sigma > 0.0)) throw std::invalid_argument("matern_kernel: sigma > 0");
    if (t < 1) throw std::invalid_argument("matern_kernel: t >= 1");
    const double r = std::sqrt(sq_dist(x, xp)) / sigma;
    if (r == 0.0) return 1.0;
    const double nu = 0.5 * static_cast<double>(x.size());
    return std::pow(bessel_j_normalized(nu, r), t);
}

double legendre_eval(int n, int d, double t) {
    if (n < 0 || d < 2) throw std::invalid_argument("legendre_eval: n >= 0, d >= 2");
    if (std::fabs(t) > 1.0 + 1e-12)
        throw std::invalid_argument("legendre_eval: |t| <= 1 required");
    t = std::clamp(t, -1.0, 1.0);
    if (n == 0) return 1.0;
    if (n == 1) return t;
    double lm1 = 1.0, l = t;
    for (int k = 1; k < n; ++k) {
        double lp1 = ((2.0 * k + d - 2.0) * t * l - k * lm1) / (k + d - 2.0);
        lm1 = l;
        l = lp1;
    }
    return l;
}

double homogeneous_legendre(int n, int d, double t, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("homogeneous_legendre: r > 0");
    if (std::fabs(t) > r * (1.0 + 1e-12))
        throw std::invalid_argument("homogeneous_legendre: |t| <= r required");
    return std::pow(r, n) * legendre_eval(n, d, t / r);
}

uint64_t count_monomials(int d, int n) {
    if (d < 1 || n < 0) throw std::invalid_argument("count_monomials: d >= 1, n >= 0");
    // C(d+n-1, n) multiplicatively; exact integer at every step
    unsigned __int128 acc = 1;
    for (int k = 1; k <= n; ++k) {
        acc = acc * static_cast<unsigned>(d + k - 1) / static_cast<unsigned>(k);
        if (acc > static_cast<unsigned __int128>(UINT64_MAX))
            throw std::overflow_error("count_monomials: exceeds 64-bit range");
    }
    return static_cast<uint64_t>(acc);
}

LegendreCoeffs legendre_coeffs_from_kappa(const std::function<double(double)>& kappa,
                                          int d, int max_degree) {
    if (d < 2) throw std::invalid_argument("legendre_coeffs_from_kappa: d >= 2");
    if (max_degree < 0)
        throw std::invalid_argument("legendre_coeffs_from_kappa: max_degree >= 0");
    const double alpha = 0.5 * (d - 3);
    const QuadRule rule = gauss_ultraspherical(4 * (max_degree + 1), alpha);

    std::vector<double> kv(rule.nodes.size());
    for (size_t i = 0; i < rule.nodes.size(); ++i) kv[i] = kappa(rule.nodes[i]);

    LegendreCoeffs out;
    out.d = d;
    out.lambda.resize(max_degree + 1);
    for (int n = 0; n <= max_degree; ++n) {
        double num = 0.0, den = 0.0;
        for (size_t i = 0; i < rule.nodes.size(); ++i) {
            double ln = legendre_eval(n, d, rule.nodes[i]);
            num += rule.weights[i] * kv[i] * ln;
            den += rule.weights[i] * ln * ln;
        }
        double lam = num / den;
        if (lam < -1e-10)
            throw numerical_error(
                "legendre_coeffs_from_kappa: negative coefficient, kernel is not "
                "positive semidefinite");
        out.lambda[n] = std::max(lam, 0.0);
    }
    return out;
}

namespace {

// <x,z_i> for m unit directions z_i, written to tx (and tx2 for the second
// input). Power-of-two d uses normalized rows of plain structured blocks;
// otherwise exact uniform sphere draws. Either way each z_i is marginally
// uniform on the sphere.
void unit_direction_dots(std::span<const double> x, std::span<const double> xp,
                         int d, size_t m, SeedSpec seed, std::vector<double>& tx,
                         std::vector<double>& txp) {
    tx.resize(m);
    txp.resize(m);
    const SeedSpec dir_seed = seed.substream(1);
    if (is_pow2(static_cast<size_t>(d))) {
        const size_t dp = static_cast<size_t>(d);
        std::vector<double> bx(dp), bxp(dp), scratch(dp);
        const size_t n_blocks = (m + dp - 1) / dp;
        for (size_t j = 0; j < n_blocks; ++j) {
            FastfoodBlock blk = build_gauss_block(dp, dir_seed.substream(j));
            // rows of H G P H B all have norm ||g|| sqrt(d)
            const double inv = 1.0 / (blk.g_norm * std::sqrt(static_cast<double>(dp)));
            blk.apply_raw(x, bx, scratch);
            blk.apply_raw(xp, bxp, scratch);
            const size_t base = j * dp;
            const size_t take = std::min(dp, m - base);
            for (size_t i = 0; i < take; ++i) {
                tx[base + i] = bx[i] * inv;
                txp[base + i] = bxp[i] * inv;
            }
        }
    } else {
        CounterRng rng(dir_seed);
        #pragma omp parallel
        {
            std::vector<double> z(d);
            #pragma omp for schedule(static)
            for (long i = 0; i < static_cast<long>(m); ++i) {
                uniform_sphere_at(rng, static_cast<uint64_t>(i) * d, z);
                tx[i] = dot(x, z);
                txp[i] = dot(xp, z);
            }
        }
    }
}

}  // namespace

double dotprod_kernel_estimate(std::span<const double> x, std::span<const double> xp,
                               const LegendreCoeffs& coeffs, size_t m, SeedSpec seed) {
    const int d = coeffs.d;
    if (x.size() != static_cast<size_t>(d) || xp.size() != static_cast<size_t>(d))
        throw std::invalid_argument("dotprod_kernel_estimate: inputs must be length d");
    const double rx = norm(x), rxp = norm(xp);
    if (rx == 0.0 || rxp == 0.0)
        throw std::invalid_argument("dotprod_kernel_estimate: zero-norm input");
    if (m < 1) throw std::invalid_argument("dotprod_kernel_estimate: m >= 1");

    auto degrees = degree_sampler(d, coeffs.lambda, m, seed.substream(0));
    std::vector<double> tx, txp;
    unit_direction_dots(x, xp, d, m, seed, tx, txp);

    const double z = coeffs.normalization();
    double acc = 0.0;
    #pragma omp parallel for schedule(static) reduction(+ : acc) if (m > 16384)
    for (long i = 0; i < static_cast<long>(m); ++i) {
        // rounding can push |t| a hair past r for colinear draws
        double ti = std::clamp(tx[i], -rx, rx);
        double tpi = std::clamp(txp[i], -rxp, rxp);
        acc += homogeneous_legendre(degrees[i], d, ti, rx) *
               homogeneous_legendre(degrees[i], d, tpi, rxp);
    }
    return z / static_cast<double>(m) * acc;
}

std::vector<double> dotprod_features(std::span<const double> x,
                                     const LegendreCoeffs& coeffs, size_t n,
                                     SeedSpec seed) {
    const int d = coeffs.d;
    if (x.size() != static_cast<size_t>(d))
        throw std::invalid_argument("dotprod_features: input must be length d");
    const double rx = norm(x);
    if (rx == 0.0) throw std::invalid_argument("dotprod_features: zero-norm input");
    if (n < 1) throw std::invalid_argument("dotprod_features: n >= 1");

    auto degrees = degree_sampler(d, coeffs.lambda, n, seed.substream(0));
    std::vector<double> tx, tx_unused;
    unit_direction_dots(x, x, d, n, seed, tx, tx_unused);

    const double scale = std::sqrt(coeffs.normalization() / static_cast<double>(n));
    std::vector<double> phi(n);
    for (size_t i = 0; i < n; ++i) {
        double ti = std::clamp(tx[i], -rx, rx);
        phi[i] = scale * homogeneous_legendre(degrees[i], d, ti, rx);
    }
    return phi;
}

double direct_poly_closed_form(std::span<const double> x, std::span<const double> xp,
                               std::span<const double> c_p, int d) {
    if (d < 4) throw std::invalid_argument("direct_poly_closed_form: d >= 4");
    const double rx = norm(x), rxp = norm(xp);
    if (rx == 0.0 || rxp == 0.0)
        throw std::invalid_argument("direct_poly_closed_form: zero-norm input");
    const double theta = std::clamp(dot(x, xp) / (rx * rxp), -1.0, 1.0);
    const double sin2 = std::max(0.0, 1.0 - theta * theta);

    // |S_{d-3}| / |S_{d-1}| = Gamma(d/2) / (pi Gamma((d-2)/2))
    const double ratio = std::exp(std::lgamma(0.5 * d) - std::log(M_PI) -
                                  std::lgamma(0.5 * (d - 2)));
    const double lg_d2 = std::lgamma(0.5 * (d - 2));

    double total = 0.0;
    for (size_t p = 0; p < c_p.size(); ++p) {
        if (c_p[p] == 0.0) continue;
        double sum = 0.0;
        for (size_t i = 0; i <= p; i += 2) {  // odd-power sphere moments vanish
            double log_binom = std::lgamma(p + 1.0) - std::lgamma(i + 1.0) -
                               std::lgamma(p - i + 1.0);
            double log_gammas = std::lgamma(0.5 * (2.0 * p - i + 1.0)) +
                                std::lgamma(0.5 * (i + 1.0)) + lg_d2 -
                                std::lgamma(0.5 * (2.0 * p + d));
            sum += std::pow(theta, static_cast<double>(p - i)) *
                   std::pow(sin2, 0.5 * static_cast<double>(i)) *
                   std::exp(log_binom + log_gammas);
        }
        total += c_p[p] * std::pow(rx * rxp, static_cast<double>(p)) * ratio * sum;
    }
    return total;
}

double direct_poly_mc(std::span<const double> x, std::span<const double> xp,
                      std::span<const double> c_p, int d, size_t m, SeedSpec seed) {
    if (d < 1) throw std::invalid_argument("direct_poly_mc: d >= 1");
    if (x.size() != static_cast<size_t>(d) || xp.size() != static_cast<size_t>(d))
        throw std::invalid_argument("direct_poly_mc: inputs must be length d");
    CounterRng rng(seed);
    double acc = 0.0;
    #pragma omp parallel reduction(+ : acc)
    {
        std::vector<double> v(d);
        #pragma omp for schedule(static)
        for (long i = 0; i < static_cast<long>(m); ++i) {
            uniform_sphere_at(rng, static_cast<uint64_t>(i) * d, v);
            double a = dot(x, v), b = dot(xp, v);
            double pa = 1.0, pb = 1.0, term = 0.0;
            for (size_t p = 0; p < c_p.size(); ++p) {
                if (p > 0) {
                    pa *= a;
                    pb *= b;
                }
                term += c_p[p] * pa * pb;
            }
            acc += term;
        }
    }
    return acc / static_cast<double>(m);
}

double exact_kernel(const KernelSpec& spec, std::span<const double> x,
                    std::span<const double> xp) {
    if (const auto* rbf = std::get_if<RbfSpec>(&spec))
        return rbf_kernel(x, xp, rbf->sigma);
    if (const auto* mat = std::get_if<MaternSpec>(&spec))
        return matern_kernel(x, xp, mat->sigma, mat->order);
    if (const auto* dp = std::get_if<DotProductSpec>(&spec)) {
        const auto& c = dp->coeffs;
        const double rx = norm(x), rxp = norm(xp);
        if (rx == 0.0 || rxp == 0.0)
            throw std::invalid_argument("exact_kernel: zero-norm input");
        double t = std::clamp(dot(x, xp) / (rx * rxp), -1.0, 1.0);
        double acc = 0.0;
        for (size_t nn = 0; nn < c.lambda.size(); ++nn)
            acc += c.lambda[nn] * std::pow(rx * rxp, static_cast<double>(nn)) *
                   legendre_eval(static_cast<int>(nn), c.d, t);
        return acc;
    }
    if (const auto* poly = std::get_if<DirectPolySpec>(&spec))
        return direct_poly_closed_form(x, xp, poly->coeffs,
                                       static_cast<int>(x.size()));
    if (const auto* anc = std::get_if<AnchoredSpec>(&spec))
        return anchored_closed_form(x, xp, anc->width, anc->spread);
    throw std::invalid_argument("exact_kernel: unsupported spec");
}

double anchored_closed_form(std::span<const double> x, std::span<const double> xp,
                            double a, double b) {
    if (!(a > 0.0) || b < 0.0)
        throw std::invalid_argument("anchored_closed_form: a > 0, b >= 0");
    double xn2 = 0.0, xpn2 = 0.0;
    for (double v : x) xn2 += v * v;
    for (double v : xp) xpn2 += v * v;
    const double c_norm = 0.5 * a * b / (2.0 * a + b);
    const double c_diff = a * a / (4.0 * a + 2.0 * b);
    return std::exp(-c_norm * (xn2 + xpn2) - c_diff * sq_dist(x, xp));
}

void save_legendre_coeffs(const LegendreCoeffs& coeffs, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw data_error("save_legendre_coeffs: cannot open " + path);
    out << coeffs.d << "\n";
    char buf[32];
    for (size_t i = 0; i < coeffs.lambda.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", coeffs.lambda[i]);
        out << (i ? " " : "") << buf;
    }
    out << "\n";
    if (!out) throw data_error("save_legendre_coeffs: write failed for " + path);
}

LegendreCoeffs load_legendre_coeffs(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("load_legendre_coeffs: cannot open " + path);
    LegendreCoeffs c;
    if (!(in >> c.d) || c.d < 2)
        throw data_error("load_legendre_coeffs: bad dimension in " + path);
    double v;
    while (in >> v) c.lambda.push_back(v);
    if (c.lambda.empty())
        throw data_error("load_legendre_coeffs: no coefficients in " + path);
    return c;
}

}  // namespace fastfood
