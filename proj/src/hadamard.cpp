#include "fastfood/hadamard.hpp"

#include <cstdint>
#include <stdexcept>

namespace fastfood {

PaddedVector pad_to_pow2(std::span<const double> x) {
    if (x.empty()) throw std::invalid_argument("pad_to_pow2: empty input");
    PaddedVector out;
    out.original_len = x.size();
    out.values.assign(next_pow2(x.size()), 0.0);
    for (size_t i = 0; i < x.size(); ++i) out.values[i] = x[i];
    return out;
}

void fwht_inplace(std::span<double> x) {
    const size_t d = x.size();
    if (!is_pow2(d))
        throw std::invalid_argument("fwht_inplace: length must be a power of two");
    double* v = x.data();
    for (size_t h = 1; h < d; h <<= 1) {
        for (size_t i = 0; i < d; i += h << 1) {
            #pragma omp simd
            for (size_t j = i; j < i + h; ++j) {
                double y = v[j + h];
                v[j + h] = v[j] - y;
                v[j] += y;
            }
        }
    }
}

void fwht_rows(double* data, size_t n_rows, size_t dim) {
    if (!is_pow2(dim))
        throw std::invalid_argument("fwht_rows: dim must be a power of two");
    #pragma omp parallel for schedule(static)
    for (long r = 0; r < static_cast<long>(n_rows); ++r)
        fwht_inplace(std::span<double>(data + r * dim, dim));
}

std::vector<double> naive_hadamard(std::span<const double> x) {
    const size_t d = x.size();
    if (!is_pow2(d))
        throw std::invalid_argument("naive_hadamard: length must be a power of two");
    if (d > 4096)
        throw std::invalid_argument("naive_hadamard: oracle limited to d <= 4096");

    // H_{2k} = [H_k  H_k; H_k -H_k], starting from H_1 = [1].
    std::vector<int8_t> h(d * d, 1);
    for (size_t k = 1; k < d; k <<= 1) {
        for (size_t i = 0; i < k; ++i) {
            for (size_t j = 0; j < k; ++j) {
                int8_t s = h[i * d + j];
                h[i * d + (j + k)] = s;
                h[(i + k) * d + j] = s;
                h[(i + k) * d + (j + k)] = static_cast<int8_t>(-s);
            }
        }
    }
    std::vector<double> y(d, 0.0);
    for (size_t i = 0; i < d; ++i) {
        double acc = 0.0;
        const int8_t* row = h.data() + i * d;
        for (size_t j = 0; j < d; ++j) acc += row[j] * x[j];
        y[i] = acc;
    }
    return y;
}

}  // namespace fastfood
