#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fastfood/seed.hpp"

namespace fastfood {

double mean(std::span<const double> xs);
double variance(std::span<const double> xs);  // unbiased (n-1 denominator)

// Kolmogorov-Smirnov statistic D_n of the sample against a CDF.
double ks_statistic(std::span<const double> sample,
                    const std::function<double(double)>& cdf);

// Asymptotic two-sided KS p-value with Stephens' small-sample correction.
double ks_pvalue(double d_stat, size_t n);

// Bootstrap percentile of the sample variance: resamples the data b times and
// returns the given quantile of the resampled variances.
double bootstrap_variance_quantile(std::span<const double> xs, size_t b,
                                   double quantile, SeedSpec seed);

}  // namespace fastfood
