#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fastfood/featuremap.hpp"
#include "fastfood/kernels.hpp"
#include "fastfood/linalg.hpp"
#include "fastfood/seed.hpp"

namespace fastfood {

// Design matrix with targets. After standardize() every non-constant column
// has mean 0 and unit standard deviation; constant columns map to zeros and
// record a standard deviation of 1.
struct Dataset {
    Matrix x;
    std::vector<double> y;
    std::vector<double> feature_mean, feature_std;
    double target_mean = 0.0;
    double target_std = 1.0;

    bool standardized() const { return !feature_mean.empty(); }
};

// Parses a delimited numeric table (comma or whitespace separated, optional
// header, '#' comments). target_column selects the target by 0-based index or
// header name; default is the last column. Errors carry 1-based row/column
// positions.
Dataset load_table(const std::string& path,
                   const std::optional<std::string>& target_column = std::nullopt);

// Same parser, but every column is a feature (no target).
Matrix load_matrix(const std::string& path);

// Writes "x... y" rows with round-trip precision (%.17g).
void save_table(const Dataset& ds, const std::string& path);

// Computes standardization statistics from ds and applies them in place.
void standardize(Dataset& ds);
// Applies previously computed statistics (train stats onto a test split).
void standardize_like(Dataset& ds, const Dataset& stats_source);

// Seeded row split; the first fraction goes to train.
std::pair<Dataset, Dataset> train_test_split(const Dataset& ds, double train_fraction,
                                             SeedSpec seed);

// Primal ridge: w solves (Phi^T Phi + lambda I) w = Phi^T y.
struct RidgeModel {
    const FeatureMap* map = nullptr;  // non-owning
    std::vector<double> w;
    double lambda = 0.0;
};

RidgeModel ridge_fit(const Matrix& phi, std::span<const double> y, double lambda,
                     const FeatureMap* map = nullptr);

double predict(const RidgeModel& model, std::span<const double> features);

// Root mean squared error; inputs are in model units, result is destandardized
// by target_std when given.
double rmse(std::span<const double> preds, std::span<const double> y,
            double target_std = 1.0);

// Exact kernel ridge through the dual system (K + lambda I) alpha = y.
struct KernelRidge {
    Matrix train_x;
    std::vector<double> alpha;
    KernelSpec spec;
    double lambda = 0.0;
};

KernelRidge kernel_ridge_fit(const Matrix& x, std::span<const double> y,
                             const KernelSpec& spec, double lambda);
double kernel_ridge_predict(const KernelRidge& model, std::span<const double> x);
std::vector<double> kernel_ridge_predict_rows(const KernelRidge& model,
                                              const Matrix& x);

// Desk-scale regression data: X uniform on [0,1]^d, y a seeded mixture of
// Gaussian bumps (50 by default) plus N(0, noise^2) noise.
Dataset synth_gp_data(size_t m, size_t d, double sigma, double noise, SeedSpec seed,
                        size_t centers = 50);

}  // namespace fastfood
