#include "fastfood/baselines.hpp"

#include <cmath>
#include <stdexcept>

#include "fastfood/errors.hpp"
#include "fastfood/sampling.hpp"

namespace fastfood {

DenseGaussianTransform DenseGaussianTransform::create(size_t dim, size_t n,
                                                      double sigma,
                                                      uint64_t master_seed,
                                                      bool hashed) {
    if (dim < 1 || n < 1)
        throw std::invalid_argument("DenseGaussianTransform: dim, n >= 1");
    if (!(sigma > 0.0))
        throw std::invalid_argument("DenseGaussianTransform: sigma > 0");
    DenseGaussianTransform tf;
    tf.n = n;
    tf.dim = dim;
    tf.sigma = sigma;
    tf.master_seed = master_seed;
    tf.hashed = hashed;
    if (!hashed) {
        tf.z = Matrix(n, dim);
        const double inv_sigma = 1.0 / sigma;
        #pragma omp parallel for schedule(static)
        for (long i = 0; i < static_cast<long>(n); ++i)
            for (size_t j = 0; j < dim; ++j)
                tf.z.at(i, j) = hashed_gaussian(i, j, master_seed) * inv_sigma;
    }
    return tf;
}

void DenseGaussianTransform::project(std::span<const double> x,
                                     std::span<double> out) const {
    if (x.size() != dim || out.size() != n)
        throw std::invalid_argument("DenseGaussianTransform: dimension mismatch");
    if (!hashed) {
        #pragma omp parallel for schedule(static) if (n * dim > 65536)
        for (long i = 0; i < static_cast<long>(n); ++i) {
            const double* row = z.row(i);
            double acc = 0.0;
            #pragma omp simd reduction(+ : acc)
            for (size_t j = 0; j < dim; ++j) acc += row[j] * x[j];
            out[i] = acc;
        }
        return;
    }
    const double inv_sigma = 1.0 / sigma;
    #pragma omp parallel for schedule(static) if (n * dim > 16384)
    for (long i = 0; i < static_cast<long>(n); ++i) {
        double acc = 0.0;
        for (size_t j = 0; j < dim; ++j)
            acc += hashed_gaussian(i, j, master_seed) * x[j];
        out[i] = acc * inv_sigma;
    }
}

std::vector<double> DenseGaussianTransform::features(std::span<const double> x) const {
    std::vector<double> zx(n);
    project(x, zx);
    std::vector<double> phi(2 * n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (size_t j = 0; j < n; ++j) {
        phi[j] = std::cos(zx[j]) * scale;
        phi[n + j] = std::sin(zx[j]) * scale;
    }
    return phi;
}

double DenseGaussianTransform::kernel_estimate(std::span<const double> x,
                                               std::span<const double> xp) const {
    if (x.size() != xp.size())
        throw std::invalid_argument("kernel_estimate: dimension mismatch");
    std::vector<double> diff(x.size());
    for (size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - xp[i];
    std::vector<double> zx(n);
    project(diff, zx);
    double acc = 0.0;
    for (double v : zx) acc += std::cos(v);
    return acc / static_cast<double>(n);
}

size_t DenseGaussianTransform::stored_parameter_bytes() const {
    return hashed ? 0 : z.a.size() * sizeof(double);
}

std::vector<double> NystromMap::features(std::span<const double> x) const {
    const size_t n = landmarks.rows;
    std::vector<double> k(n);
    for (size_t i = 0; i < n; ++i)
        k[i] = exact_kernel(spec, landmarks.row_span(i), x);
    return matvec(w, k);
}

NystromMap nystrom_build(const Matrix& data, size_t n, const KernelSpec& spec,
                         SeedSpec seed, double eig_floor) {
    if (n < 1 || n > data.rows)
        throw std::invalid_argument("nystrom_build: need 1 <= n <= data rows");
    validate_spec(spec);

    // landmark indices: first n entries of a random permutation of the rows
    auto perm = random_permutation(data.rows, seed);
    NystromMap map;
    map.spec = spec;
    map.landmarks = Matrix(n, data.cols);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < data.cols; ++j)
            map.landmarks.at(i, j) = data.at(perm[i], j);

    Matrix knn(n, n);
    #pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < static_cast<long>(n); ++i) {
        for (size_t j = i; j < n; ++j) {
            double v = exact_kernel(spec, map.landmarks.row_span(i),
                                    map.landmarks.row_span(j));
            knn.at(i, j) = v;
            knn.at(j, i) = v;
        }
    }

    EigenResult eig = jacobi_eigen(std::move(knn));
    for (double w : eig.w)
        if (w < -1e-8)
            throw numerical_error("nystrom_build: kernel matrix is not PSD");

    // W = U diag(f(w)) U^T with f(w) = w^{-1/2} above the floor, else 0
    std::vector<double> f(n);
    for (size_t k = 0; k < n; ++k)
        f[k] = eig.w[k] > eig_floor ? 1.0 / std::sqrt(eig.w[k]) : 0.0;
    map.w = Matrix(n, n, 0.0);
    #pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(n); ++i) {
        for (size_t j = i; j < n; ++j) {
            double acc = 0.0;
            for (size_t k = 0; k < n; ++k)
                acc += eig.u.at(i, k) * f[k] * eig.u.at(j, k);
            map.w.at(i, j) = acc;
            map.w.at(j, i) = acc;
        }
    }
    return map;
}

}  // namespace fastfood
