#include "fastfood/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fastfood {

double mean(std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("mean: empty sample");
    double acc = 0.0;
    for (double v : xs) acc += v;
    return acc / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
    if (xs.size() < 2) throw std::invalid_argument("variance: need >= 2 samples");
    double m = mean(xs);
    double acc = 0.0;
    for (double v : xs) acc += (v - m) * (v - m);
    return acc / static_cast<double>(xs.size() - 1);
}

double ks_statistic(std::span<const double> sample,
                    const std::function<double(double)>& cdf) {
    if (sample.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::vector<double> xs(sample.begin(), sample.end());
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        double f = cdf(xs[i]);
        d = std::max(d, f - static_cast<double>(i) / n);
        d = std::max(d, static_cast<double>(i + 1) / n - f);
    }
    return d;
}

double ks_pvalue(double d_stat, size_t n) {
    double sn = std::sqrt(static_cast<double>(n));
    double lambda = d_stat * (sn + 0.12 + 0.11 / sn);
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        double term = 2.0 * ((k % 2 == 1) ? 1.0 : -1.0) *
                      std::exp(-2.0 * k * k * lambda * lambda);
        sum += term;
        if (std::fabs(term) < 1e-12) break;
    }
    return std::clamp(sum, 0.0, 1.0);
}

double bootstrap_variance_quantile(std::span<const double> xs, size_t b,
                                   double quantile, SeedSpec seed) {
    if (xs.size() < 2 || b < 1)
        throw std::invalid_argument("bootstrap_variance_quantile: bad arguments");
    const size_t n = xs.size();
    std::vector<double> vars(b);
    CounterRng rng(seed);
    #pragma omp parallel for schedule(static)
    for (long rep = 0; rep < static_cast<long>(b); ++rep) {
        const uint64_t base = static_cast<uint64_t>(rep) * n;
        double s = 0.0, ss = 0.0;
        for (size_t i = 0; i < n; ++i) {
            unsigned __int128 m =
                static_cast<unsigned __int128>(rng.word_at(base + i)) * n;
            double v = xs[static_cast<size_t>(m >> 64)];
            s += v;
            ss += v * v;
        }
        double mu = s / static_cast<double>(n);
        vars[rep] = (ss - static_cast<double>(n) * mu * mu) /
                    static_cast<double>(n - 1);
    }
    std::sort(vars.begin(), vars.end());
    double pos = quantile * static_cast<double>(b - 1);
    size_t lo = static_cast<size_t>(pos);
    size_t hi = std::min(lo + 1, b - 1);
    double frac = pos - static_cast<double>(lo);
    return vars[lo] * (1.0 - frac) + vars[hi] * frac;
}

}  // namespace fastfood
