#include "fastfood/fastfood.hpp"

#include <cmath>
#include <stdexcept>

#include "fastfood/errors.hpp"
#include "fastfood/hadamard.hpp"

namespace fastfood {

namespace {

enum : uint64_t { kTagB = 0, kTagG = 1, kTagPerm = 2, kTagS = 3 };

double norm2(std::span<const double> v) {
    double ss = 0.0;
    for (double x : v) ss += x * x;
    return std::sqrt(ss);
}

FastfoodBlock gauss_part(size_t d_pad, SeedSpec seed) {
    if (!is_pow2(d_pad))
        throw std::invalid_argument("build_block: d_pad must be a power of two");
    FastfoodBlock blk;
    blk.dim = static_cast<uint32_t>(d_pad);
    blk.b = rademacher_diag(d_pad, seed.substream(kTagB));
    blk.g = gaussian_diag(d_pad, seed.substream(kTagG));
    blk.perm = random_permutation(d_pad, seed.substream(kTagPerm));
    blk.g_norm = norm2(blk.g);
    if (blk.g_norm == 0.0) throw numerical_error("build_block: zero Gaussian diagonal");
    return blk;
}

}  // namespace

void FastfoodBlock::apply_raw(std::span<const double> x, std::span<double> out,
                              std::span<double> scratch) const {
    const size_t d = dim;
    if (x.size() != d || out.size() != d || scratch.size() != d)
        throw std::invalid_argument("apply_raw: dimension mismatch");
    for (size_t i = 0; i < d; ++i) out[i] = b[i] * x[i];
    fwht_inplace(out);
    for (size_t i = 0; i < d; ++i) scratch[i] = out[perm[i]];
    for (size_t i = 0; i < d; ++i) out[i] = g[i] * scratch[i];
    fwht_inplace(out);
}

void FastfoodBlock::apply(std::span<const double> x, std::span<double> out,
                          std::span<double> scratch) const {
    if (s.size() != dim) throw std::invalid_argument("apply: block has no scales");
    apply_raw(x, out, scratch);
    const double inv = 1.0 / (sigma * std::sqrt(static_cast<double>(dim)));
    for (size_t i = 0; i < dim; ++i) out[i] *= s[i] * inv;
}

FastfoodBlock build_block(size_t d_pad, const KernelSpec& spec, SeedSpec seed) {
    validate_spec(spec);
    if (const auto* rbf = std::get_if<RbfSpec>(&spec)) {
        return build_block(d_pad, RadialSampler::chi_rbf(static_cast<int>(d_pad)),
                           rbf->sigma, seed);
    }
    if (const auto* mat = std::get_if<MaternSpec>(&spec)) {
        return build_block(
            d_pad, RadialSampler::matern_conv(static_cast<int>(d_pad), mat->order),
            mat->sigma, seed);
    }
    throw std::invalid_argument(
        "build_block: transform requires a radial kernel (rbf or matern)");
}

FastfoodBlock build_block(size_t d_pad, const RadialSampler& radial, double sigma,
                          SeedSpec seed) {
    if (sigma <= 0.0) throw std::invalid_argument("build_block: sigma > 0");
    FastfoodBlock blk = gauss_part(d_pad, seed);
    blk.sigma = sigma;
    blk.s = radial_draws(radial, d_pad, seed.substream(kTagS));
    const double inv = 1.0 / blk.g_norm;
    for (auto& v : blk.s) v *= inv;  // row i of V gets norm r_i / sigma
    return blk;
}

FastfoodBlock build_gauss_block(size_t d_pad, SeedSpec seed) {
    return gauss_part(d_pad, seed);
}

FastfoodTransform FastfoodTransform::create(size_t input_dim, size_t n,
                                            KernelSpec spec, uint64_t master_seed) {
    if (input_dim < 1 || n < 1)
        throw std::invalid_argument("FastfoodTransform: input_dim, n >= 1");
    FastfoodTransform tf;
    tf.input_dim = input_dim;
    tf.d_pad = next_pow2(input_dim);
    tf.n = n;
    tf.spec = spec;
    tf.master_seed = master_seed;
    const size_t n_blocks = (n + tf.d_pad - 1) / tf.d_pad;
    tf.blocks.reserve(n_blocks);
    for (size_t j = 0; j < n_blocks; ++j)
        tf.blocks.push_back(build_block(tf.d_pad, spec, SeedSpec{master_seed, j}));
    return tf;
}

void FastfoodTransform::project(std::span<const double> x, std::span<double> out) const {
    if (x.size() > d_pad || out.size() != n)
        throw std::invalid_argument("project: dimension mismatch");
    std::vector<double> padded(d_pad, 0.0);
    for (size_t i = 0; i < x.size(); ++i) padded[i] = x[i];
    std::vector<double> buf(d_pad), scratch(d_pad);
    size_t written = 0;
    for (const auto& blk : blocks) {
        blk.apply(padded, buf, scratch);
        const size_t take = std::min(d_pad, n - written);
        for (size_t i = 0; i < take; ++i) out[written + i] = buf[i];
        written += take;
        if (written == n) break;
    }
}

std::vector<double> FastfoodTransform::features(std::span<const double> x) const {
    std::vector<double> z(n);
    project(x, z);
    std::vector<double> phi(2 * n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (size_t j = 0; j < n; ++j) {
        phi[j] = std::cos(z[j]) * scale;
        phi[n + j] = std::sin(z[j]) * scale;
    }
    return phi;
}

double FastfoodTransform::kernel_estimate(std::span<const double> x,
                                          std::span<const double> xp) const {
    if (x.size() != xp.size())
        throw std::invalid_argument("kernel_estimate: dimension mismatch");
    std::vector<double> diff(x.size());
    for (size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - xp[i];
    std::vector<double> z(n);
    project(diff, z);
    double acc = 0.0;
    for (double v : z) acc += std::cos(v);
    return acc / static_cast<double>(n);
}

size_t FastfoodTransform::stored_parameter_bytes() const {
    size_t bytes = 0;
    for (const auto& blk : blocks)
        bytes += (blk.b.size() + blk.g.size() + blk.s.size()) * sizeof(double) +
                 blk.perm.size() * sizeof(uint32_t);
    return bytes;
}

AnchoredMap AnchoredMap::create(size_t input_dim, size_t n, double a, double b,
                                uint64_t master_seed) {
    if (a <= 0.0 || b <= 0.0)
        throw std::invalid_argument("AnchoredMap: width and spread must be positive");
    if (input_dim < 1 || n < 1)
        throw std::invalid_argument("AnchoredMap: input_dim, n >= 1");
    AnchoredMap map;
    map.input_dim = input_dim;
    map.d_pad = next_pow2(input_dim);
    map.n = n;
    map.width = a;
    map.spread = b;
    map.master_seed = master_seed;
    const size_t n_blocks = (n + map.d_pad - 1) / map.d_pad;
    map.blocks.reserve(n_blocks);
    for (size_t j = 0; j < n_blocks; ++j)
        map.blocks.push_back(build_gauss_block(map.d_pad, SeedSpec{master_seed, j}));
    return map;
}

std::vector<double> AnchoredMap::features(std::span<const double> x) const {
    if (x.size() > d_pad) throw std::invalid_argument("AnchoredMap: input too long");
    std::vector<double> padded(d_pad, 0.0);
    double xn2 = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        padded[i] = x[i];
        xn2 += x[i] * x[i];
    }
    std::vector<double> phi(n);
    std::vector<double> buf(d_pad), scratch(d_pad);
    // anchor i of a block is row_i(H G P H B) / sqrt(d b): unit-variance
    // Gaussian-like coordinates scaled to variance 1/b
    const double dot_scale = 1.0 / std::sqrt(static_cast<double>(d_pad) * spread);
    const double feat_scale = 1.0 / std::sqrt(static_cast<double>(n));
    size_t written = 0;
    for (const auto& blk : blocks) {
        blk.apply_raw(padded, buf, scratch);
        // all rows of one block share |z|^2 = ||g||^2 / b
        const double z_norm2 = blk.g_norm * blk.g_norm / spread;
        const size_t take = std::min(d_pad, n - written);
        for (size_t i = 0; i < take; ++i) {
            double dot = buf[i] * dot_scale;
            phi[written + i] =
                feat_scale * std::exp(-0.5 * width * (xn2 - 2.0 * dot + z_norm2));
        }
        written += take;
        if (written == n) break;
    }
    return phi;
}

double AnchoredMap::kernel_estimate(std::span<const double> x,
                                    std::span<const double> xp) const {
    auto fx = features(x);
    auto fxp = features(xp);
    double acc = 0.0;
    for (size_t i = 0; i < fx.size(); ++i) acc += fx[i] * fxp[i];
    return acc;
}

}  // namespace fastfood
