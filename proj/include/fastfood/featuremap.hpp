#pragma once

#include <memory>
#include <span>
#include <vector>

#include "fastfood/baselines.hpp"
#include "fastfood/fastfood.hpp"
#include "fastfood/linalg.hpp"

namespace fastfood {

// Common surface for explicit feature expansions feeding the learner.
struct FeatureMap {
    virtual ~FeatureMap() = default;
    virtual size_t feature_dim() const = 0;
    virtual std::vector<double> features(std::span<const double> x) const = 0;
};

struct FastfoodFeatureMap final : FeatureMap {
    FastfoodTransform tf;
    explicit FastfoodFeatureMap(FastfoodTransform t) : tf(std::move(t)) {}
    size_t feature_dim() const override { return 2 * tf.n; }
    std::vector<double> features(std::span<const double> x) const override {
        return tf.features(x);
    }
};

struct RksFeatureMap final : FeatureMap {
    DenseGaussianTransform tf;
    explicit RksFeatureMap(DenseGaussianTransform t) : tf(std::move(t)) {}
    size_t feature_dim() const override { return 2 * tf.n; }
    std::vector<double> features(std::span<const double> x) const override {
        return tf.features(x);
    }
};

struct NystromFeatureMap final : FeatureMap {
    NystromMap map;
    explicit NystromFeatureMap(NystromMap m) : map(std::move(m)) {}
    size_t feature_dim() const override { return map.landmarks.rows; }
    std::vector<double> features(std::span<const double> x) const override {
        return map.features(x);
    }
};

// Row-parallel featurization; rows are independent so the result does not
// depend on the thread count.
Matrix featurize_rows(const FeatureMap& map, const Matrix& x);

}  // namespace fastfood
