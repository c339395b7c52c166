#include "fastfood/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fastfood/errors.hpp"
#include "fastfood/special.hpp"

namespace fastfood {

std::vector<double> rademacher_diag(size_t d, SeedSpec seed) {
    if (d < 1) throw std::invalid_argument("rademacher_diag: d >= 1");
    CounterRng rng(seed);
    std::vector<double> out(d);
    #pragma omp parallel for schedule(static) if (d > 4096)
    for (long i = 0; i < static_cast<long>(d); ++i)
        out[i] = (rng.word_at(i) >> 63) ? 1.0 : -1.0;
    return out;
}

std::vector<double> gaussian_diag(size_t d, SeedSpec seed) {
    if (d < 1) throw std::invalid_argument("gaussian_diag: d >= 1");
    CounterRng rng(seed);
    std::vector<double> out(d);
    #pragma omp parallel for schedule(static) if (d > 4096)
    for (long i = 0; i < static_cast<long>(d); ++i)
        out[i] = inv_normal_cdf(rng.uniform_at(i));
    return out;
}

std::vector<uint32_t> random_permutation(size_t d, SeedSpec seed) {
    if (d < 1) throw std::invalid_argument("random_permutation: d >= 1");
    std::vector<uint32_t> p(d);
    std::iota(p.begin(), p.end(), 0u);
    CounterRng rng(seed);
    for (size_t i = d - 1; i > 0; --i) {
        size_t j = rng.next_below(i + 1);
        std::swap(p[i], p[j]);
    }
    return p;
}

std::vector<uint32_t> invert_permutation(std::span<const uint32_t> perm) {
    std::vector<uint32_t> inv(perm.size());
    for (size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<uint32_t>(i);
    return inv;
}

RadialSampler RadialSampler::chi_rbf(int d) {
    if (d < 1) throw std::invalid_argument("chi_rbf: d >= 1");
    RadialSampler s;
    s.kind = Kind::ChiRBF;
    s.dim = d;
    return s;
}

RadialSampler RadialSampler::matern_conv(int d, int t) {
    if (d < 1 || t < 1) throw std::invalid_argument("matern_conv: d >= 1, t >= 1");
    RadialSampler s;
    s.kind = Kind::MaternConv;
    s.dim = d;
    s.conv_order = t;
    return s;
}

RadialSampler RadialSampler::tabulated(int d, std::vector<double> density, double r_max) {
    if (d < 1) throw std::invalid_argument("tabulated: d >= 1");
    if (density.size() < 2 || r_max <= 0.0)
        throw std::invalid_argument("tabulated: need >= 2 grid values and r_max > 0");
    double total = 0.0;
    for (double v : density) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument("tabulated: density must be finite and >= 0");
        total += v;
    }
    if (total <= 0.0)
        throw std::invalid_argument("tabulated: density is not normalizable");
    RadialSampler s;
    s.kind = Kind::Tabulated;
    s.dim = d;
    s.density_grid = std::move(density);
    s.r_max = r_max;
    return s;
}

void uniform_sphere_at(const CounterRng& rng, uint64_t ctr_base, std::span<double> out) {
    double norm2 = 0.0;
    for (size_t k = 0; k < out.size(); ++k) {
        out[k] = inv_normal_cdf(rng.uniform_at(ctr_base + k));
        norm2 += out[k] * out[k];
    }
    if (norm2 == 0.0) {  // unreachable in practice
        out[0] = 1.0;
        return;
    }
    double inv = 1.0 / std::sqrt(norm2);
    for (auto& v : out) v *= inv;
}

void uniform_ball_at(const CounterRng& rng, uint64_t ctr_base, std::span<double> out) {
    uniform_sphere_at(rng, ctr_base, out);
    double u = rng.uniform_at(ctr_base + out.size());
    double radius = std::pow(u, 1.0 / static_cast<double>(out.size()));
    for (auto& v : out) v *= radius;
}

namespace {

double chi_draw(const CounterRng& rng, uint64_t ctr_base, int d) {
    double ss = 0.0;
    for (int k = 0; k < d; ++k) {
        double z = inv_normal_cdf(rng.uniform_at(ctr_base + k));
        ss += z * z;
    }
    return std::sqrt(ss);
}

double matern_draw(const CounterRng& rng, uint64_t ctr_base, int d, int t,
                   std::span<double> ball, std::span<double> acc) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (int i = 0; i < t; ++i) {
        uniform_ball_at(rng, ctr_base + static_cast<uint64_t>(i) * (d + 1), ball);
        for (int k = 0; k < d; ++k) acc[k] += ball[k];
    }
    double ss = 0.0;
    for (int k = 0; k < d; ++k) ss += acc[k] * acc[k];
    return std::sqrt(ss);
}

// Piecewise-linear CDF of r^{d-1} f(r) on the uniform grid; node values only.
std::vector<double> tabulated_cdf(const RadialSampler& s) {
    const size_t n = s.density_grid.size();
    const double dr = s.r_max / static_cast<double>(n - 1);
    std::vector<double> w(n), cdf(n, 0.0);
    for (size_t k = 0; k < n; ++k) {
        double r = dr * static_cast<double>(k);
        w[k] = std::pow(r, s.dim - 1) * s.density_grid[k];
    }
    for (size_t k = 1; k < n; ++k) cdf[k] = cdf[k - 1] + 0.5 * (w[k - 1] + w[k]) * dr;
    double total = cdf.back();
    if (total <= 0.0)
        throw std::invalid_argument("tabulated: weighted density integrates to zero");
    for (auto& v : cdf) v /= total;
    return cdf;
}

double tabulated_draw(const std::vector<double>& cdf, double r_max, double u) {
    auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    size_t hi = std::min<size_t>(std::max<ptrdiff_t>(it - cdf.begin(), 1), cdf.size() - 1);
    size_t lo = hi - 1;
    double span = cdf[hi] - cdf[lo];
    double frac = span > 0.0 ? (u - cdf[lo]) / span : 0.0;
    double dr = r_max / static_cast<double>(cdf.size() - 1);
    return dr * (static_cast<double>(lo) + frac);
}

}  // namespace

std::vector<double> radial_draws(const RadialSampler& sampler, size_t n, SeedSpec seed) {
    if (n < 1) throw std::invalid_argument("radial_draws: n >= 1");
    CounterRng rng(seed);
    std::vector<double> out(n);
    const int d = sampler.dim;

    switch (sampler.kind) {
        case RadialSampler::Kind::ChiRBF: {
            #pragma omp parallel for schedule(static) if (n * d > 65536)
            for (long i = 0; i < static_cast<long>(n); ++i)
                out[i] = chi_draw(rng, static_cast<uint64_t>(i) * d, d);
            break;
        }
        case RadialSampler::Kind::MaternConv: {
            const int t = sampler.conv_order;
            const uint64_t stride = static_cast<uint64_t>(t) * (d + 1);
            #pragma omp parallel if (n * stride > 65536)
            {
                std::vector<double> ball(d), acc(d);
                #pragma omp for schedule(static)
                for (long i = 0; i < static_cast<long>(n); ++i)
                    out[i] = matern_draw(rng, static_cast<uint64_t>(i) * stride, d, t,
                                         ball, acc);
            }
            break;
        }
        case RadialSampler::Kind::Tabulated: {
            auto cdf = tabulated_cdf(sampler);
            #pragma omp parallel for schedule(static) if (n > 65536)
            for (long i = 0; i < static_cast<long>(n); ++i)
                out[i] = tabulated_draw(cdf, sampler.r_max, rng.uniform_at(i));
            break;
        }
    }
    return out;
}

std::vector<int> degree_sampler(int d, std::span<const double> lambda, size_t n,
                                SeedSpec seed) {
    if (lambda.empty()) throw std::invalid_argument("degree_sampler: empty coefficients");
    std::vector<double> cum(lambda.size());
    double total = 0.0;
    double nd = 1.0;  // N(d,0) = 1; N(d,k) = N(d,k-1) * (d+k-1)/k
    for (size_t k = 0; k < lambda.size(); ++k) {
        if (k > 0) nd *= static_cast<double>(d + k - 1) / static_cast<double>(k);
        if (lambda[k] < 0.0)
            throw std::invalid_argument("degree_sampler: negative expansion coefficient");
        total += lambda[k] * nd;
        cum[k] = total;
    }
    if (total <= 0.0)
        throw std::invalid_argument("degree_sampler: all coefficients are zero");

    CounterRng rng(seed);
    std::vector<int> out(n);
    #pragma omp parallel for schedule(static) if (n > 65536)
    for (long i = 0; i < static_cast<long>(n); ++i) {
        double u = rng.uniform_at(i) * total;
        out[i] = static_cast<int>(std::lower_bound(cum.begin(), cum.end(), u) -
                                  cum.begin());
    }
    return out;
}

double hashed_gaussian(uint64_t i, uint64_t j, uint64_t master_seed) {
    uint64_t h = mix64(mix64(master_seed ^ (0x9e3779b97f4a7c15ULL * (i + 1))) ^
                       (0xc2b2ae3d27d4eb4fULL * (j + 1)));
    double u = (static_cast<double>(h >> 11) + 0.5) * (1.0 / 9007199254740992.0);
    return inv_normal_cdf(u);
}

}  // namespace fastfood
