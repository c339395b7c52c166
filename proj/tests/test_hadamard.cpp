#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "fastfood/hadamard.hpp"
#include "fastfood/sampling.hpp"

using namespace fastfood;

namespace {

std::vector<double> random_vec(size_t d, uint64_t stream) {
    return gaussian_diag(d, SeedSpec{42, stream});
}

}  // namespace

TEST_CASE("fwht matches hand values") {
    std::vector<double> a{1, 0, 0, 0};
    fwht_inplace(std::span<double>(a));
    CHECK(a == std::vector<double>{1, 1, 1, 1});

    std::vector<double> b{3, 1};
    fwht_inplace(std::span<double>(b));
    CHECK(b == std::vector<double>{4, 2});

    std::vector<double> c{7};
    fwht_inplace(std::span<double>(c));
    CHECK(c == std::vector<double>{7});
}

TEST_CASE("naive hadamard hand values and involution") {
    CHECK(naive_hadamard(std::vector<double>{1, 0}) == std::vector<double>{1, 1});
    CHECK(naive_hadamard(std::vector<double>{0, 1}) == std::vector<double>{1, -1});

    auto x = random_vec(16, 0);
    auto twice = naive_hadamard(naive_hadamard(x));
    for (size_t i = 0; i < x.size(); ++i)
        CHECK(twice[i] == doctest::Approx(16.0 * x[i]).epsilon(1e-12));
}

TEST_CASE("fwht equals the dense oracle across sizes") {
    for (size_t d : {1u, 2u, 4u, 8u, 32u, 128u, 1024u}) {
        auto x = random_vec(d, d);
        auto expect = naive_hadamard(x);
        auto got = x;
        fwht_inplace(std::span<double>(got));
        for (size_t i = 0; i < d; ++i)
            CHECK(std::fabs(got[i] - expect[i]) <= 1e-12 * d);
    }
}

TEST_CASE("fwht properties: involution, linearity, Parseval") {
    const size_t d = 256;
    auto x = random_vec(d, 1);
    auto y = random_vec(d, 2);

    auto xx = x;
    fwht_inplace(std::span<double>(xx));
    auto parseval_lhs = 0.0, norm_x = 0.0;
    for (size_t i = 0; i < d; ++i) {
        parseval_lhs += xx[i] * xx[i];
        norm_x += x[i] * x[i];
    }
    CHECK(parseval_lhs == doctest::Approx(d * norm_x).epsilon(1e-12));

    fwht_inplace(std::span<double>(xx));
    for (size_t i = 0; i < d; ++i)
        CHECK(xx[i] == doctest::Approx(d * x[i]).epsilon(1e-10));

    std::vector<double> lin(d), fx = x, fy = y;
    for (size_t i = 0; i < d; ++i) lin[i] = 2.5 * x[i] - 0.75 * y[i];
    fwht_inplace(std::span<double>(lin));
    fwht_inplace(std::span<double>(fx));
    fwht_inplace(std::span<double>(fy));
    for (size_t i = 0; i < d; ++i)
        CHECK(lin[i] == doctest::Approx(2.5 * fx[i] - 0.75 * fy[i]).epsilon(1e-10));
}

TEST_CASE("fwht rejects non-power-of-two input") {
    std::vector<double> bad{1, 2, 3};
    CHECK_THROWS_AS(fwht_inplace(std::span<double>(bad)), std::invalid_argument);
    CHECK_THROWS_AS(naive_hadamard(bad), std::invalid_argument);
}

TEST_CASE("pad_to_pow2") {
    std::vector<double> x(10, 1.5);
    auto p = pad_to_pow2(x);
    CHECK(p.padded_len() == 16);
    CHECK(p.original_len == 10);
    for (size_t i = 10; i < 16; ++i) CHECK(p.values[i] == 0.0);

    std::vector<double> x16(16, 2.0);
    auto p16 = pad_to_pow2(x16);
    CHECK(p16.padded_len() == 16);

    double n_before = 0.0, n_after = 0.0;
    for (double v : x) n_before += v * v;
    for (double v : p.values) n_after += v * v;
    CHECK(n_before == doctest::Approx(n_after));

    CHECK_THROWS_AS(pad_to_pow2(std::span<const double>{}), std::invalid_argument);
}

TEST_CASE("fwht_rows matches per-row transforms and is schedule independent") {
    const size_t rows = 33, d = 64;
    std::vector<double> batch(rows * d), again;
    for (size_t r = 0; r < rows; ++r) {
        auto x = random_vec(d, 100 + r);
        std::copy(x.begin(), x.end(), batch.begin() + r * d);
    }
    again = batch;

    fwht_rows(batch.data(), rows, d);
    fwht_rows(again.data(), rows, d);
    CHECK(batch == again);  // bit-identical across runs

    for (size_t r = 0; r < rows; ++r) {
        auto x = random_vec(d, 100 + r);
        fwht_inplace(std::span<double>(x));
        for (size_t i = 0; i < d; ++i) CHECK(batch[r * d + i] == x[i]);
    }
}
