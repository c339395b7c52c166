#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fastfood {

inline bool is_pow2(size_t n) { return n > 0 && (n & (n - 1)) == 0; }

inline size_t next_pow2(size_t n) {
    size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// Vector zero-padded to the next power of two, keeping the pre-pad length.
struct PaddedVector {
    std::vector<double> values;
    size_t original_len = 0;

    size_t padded_len() const { return values.size(); }
};

// Smallest power-of-two length >= x.size(), zero-filled tail.
// Throws std::invalid_argument on empty input.
PaddedVector pad_to_pow2(std::span<const double> x);

// Unnormalized Walsh-Hadamard product H_d * x, in place, O(d log d).
// Length must be a power of two >= 1.
void fwht_inplace(std::span<double> x);

inline void fwht_inplace(PaddedVector& x) { fwht_inplace(std::span<double>(x.values)); }

// Row-parallel transform of an (n_rows x dim) row-major buffer.
// Output is independent of the thread count.
void fwht_rows(double* data, size_t n_rows, size_t dim);

// Dense O(d^2) oracle: H_d * x with H built by the doubling recursion
// from H_2. Power-of-two length <= 4096.
std::vector<double> naive_hadamard(std::span<const double> x);

}  // namespace fastfood
