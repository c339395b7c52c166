#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

#include "fastfood/errors.hpp"
#include "fastfood/learn.hpp"
#include "fastfood/stats.hpp"
#include "support/oracles.hpp"

using namespace fastfood;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(std::string p, const std::string& content) : path(std::move(p)) {
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("load_table parses headers, commas and whitespace") {
    TempFile f("tbl1.csv", "a,b\n1,2\n3,4\n5,6\n");
    auto ds = load_table(f.path);
    CHECK(ds.x.rows == 3);
    CHECK(ds.x.cols == 1);
    CHECK(ds.y == std::vector<double>{2, 4, 6});

    TempFile g("tbl2.txt", "1 2 3\n4 5 6\n");
    auto ds2 = load_table(g.path);
    CHECK(ds2.x.cols == 2);
    CHECK(ds2.y == std::vector<double>{3, 6});

    auto ds3 = load_table(f.path, std::optional<std::string>("a"));
    CHECK(ds3.y == std::vector<double>{1, 3, 5});
    auto ds4 = load_table(f.path, std::optional<std::string>("0"));
    CHECK(ds4.y == std::vector<double>{1, 3, 5});
    CHECK_THROWS_AS(load_table(f.path, std::optional<std::string>("missing")),
                    data_error);
}

TEST_CASE("load_table reports the offending row") {
    TempFile f("tbl3.txt", "1 2\n3 4\n5 6\n7 8\n9 10\n11 12\nx 14\n");
    try {
        load_table(f.path);
        FAIL("expected data_error");
    } catch (const data_error& e) {
        CHECK(std::string(e.what()).find("row 7") != std::string::npos);
    }

    TempFile g("tbl4.txt", "1 2\n3 4 5\n");
    CHECK_THROWS_AS(load_table(g.path), data_error);
    CHECK_THROWS_AS(load_table("does_not_exist.txt"), data_error);
}

TEST_CASE("table write/read round trip is bit exact") {
    Dataset ds;
    ds.x = Matrix(3, 2);
    ds.x.a = {0.1, 1.0 / 3.0, -2.5e-17, 3.14159265358979312, 7.0, 1e300};
    ds.y = {-0.0, 0.12345678901234567, 42.0};
    save_table(ds, "tbl5.txt");
    auto back = load_table("tbl5.txt");
    CHECK(back.x.a == ds.x.a);
    CHECK(back.y == ds.y);
    std::remove("tbl5.txt");
}

TEST_CASE("standardization") {
    auto ds = synth_gp_data(200, 4, 1.0, 0.1, SeedSpec{71, 0});
    for (size_t i = 0; i < 200; ++i) ds.x.at(i, 2) = 3.0;  // constant column
    standardize(ds);
    for (size_t j = 0; j < 4; ++j) {
        double s = 0.0, ss = 0.0;
        for (size_t i = 0; i < 200; ++i) {
            s += ds.x.at(i, j);
            ss += ds.x.at(i, j) * ds.x.at(i, j);
        }
        double m = s / 200.0;
        CHECK(std::fabs(m) <= 1e-10);
        if (j == 2) {
            CHECK(ss == 0.0);
            CHECK(ds.feature_std[2] == 1.0);
        } else {
            CHECK(std::sqrt(ss / 200.0 - m * m) == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("ridge shrinks to zero under a huge penalty") {
    auto ds = synth_gp_data(80, 3, 1.0, 0.1, SeedSpec{72, 0});
    Matrix phi = ds.x;  // identity features
    auto model = ridge_fit(phi, ds.y, 1e12);
    double wn = 0.0;
    for (double w : model.w) wn += w * w;
    CHECK(std::sqrt(wn) <= 1e-6);
}

TEST_CASE("ridge interpolates exactly linear targets") {
    const size_t m = 60, p = 4;
    CounterRng rng(SeedSpec{73, 0});
    Matrix phi(m, p);
    for (auto& v : phi.a) v = 2.0 * rng.next_uniform() - 1.0;
    std::vector<double> w_true{0.5, -1.0, 2.0, 0.25}, y(m);
    for (size_t i = 0; i < m; ++i) {
        double acc = 0.0;
        for (size_t j = 0; j < p; ++j) acc += phi.at(i, j) * w_true[j];
        y[i] = acc;
    }
    auto model = ridge_fit(phi, y, 1e-12);
    std::vector<double> preds(m);
    for (size_t i = 0; i < m; ++i) preds[i] = predict(model, phi.row_span(i));
    CHECK(rmse(preds, y) <= 1e-6);
}

TEST_CASE("ridge matches the elimination oracle on a 50x20 problem") {
    const size_t m = 50, p = 20;
    const double lambda = 0.37;
    CounterRng rng(SeedSpec{74, 0});
    Matrix phi(m, p);
    for (auto& v : phi.a) v = 2.0 * rng.next_uniform() - 1.0;
    std::vector<double> y(m);
    for (auto& v : y) v = 2.0 * rng.next_uniform() - 1.0;

    auto model = ridge_fit(phi, y, lambda);

    // oracle: assemble the normal equations by hand, solve by elimination
    Matrix a(p, p, 0.0);
    std::vector<double> rhs(p, 0.0);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < p; ++j) {
            rhs[j] += phi.at(i, j) * y[i];
            for (size_t k = 0; k < p; ++k) a.at(j, k) += phi.at(i, j) * phi.at(i, k);
        }
    for (size_t j = 0; j < p; ++j) a.at(j, j) += lambda;
    auto expect = oracle::gauss_solve(a, rhs);
    for (size_t j = 0; j < p; ++j)
        CHECK(model.w[j] == doctest::Approx(expect[j]).epsilon(1e-8));

    // residual contract: ||(Phi^T Phi + lambda I) w - Phi^T y|| <= 1e-8 relative
    std::vector<double> res(p, 0.0);
    double rhs_norm = 0.0, res_norm = 0.0;
    for (size_t j = 0; j < p; ++j) {
        double acc = 0.0;
        for (size_t k = 0; k < p; ++k) acc += a.at(j, k) * model.w[k];
        res[j] = acc - rhs[j];
        rhs_norm += rhs[j] * rhs[j];
        res_norm += res[j] * res[j];
    }
    CHECK(std::sqrt(res_norm) <= 1e-8 * std::sqrt(rhs_norm));
}

TEST_CASE("rmse conventions") {
    std::vector<double> y{1.0, 2.0, 5.0};
    CHECK(rmse(y, y) == 0.0);
    std::vector<double> preds{1.0, 2.0, 3.0};
    CHECK(rmse(preds, y) == doctest::Approx(std::sqrt(4.0 / 3.0)).epsilon(1e-14));

    double m = (1.0 + 2.0 + 5.0) / 3.0;
    std::vector<double> const_pred{m, m, m};
    double pop_std = std::sqrt(((1 - m) * (1 - m) + (2 - m) * (2 - m) + (5 - m) * (5 - m)) / 3.0);
    CHECK(rmse(const_pred, y) == doctest::Approx(pop_std).epsilon(1e-14));

    std::vector<double> short_y{1.0};
    CHECK_THROWS_AS(rmse(preds, short_y), std::invalid_argument);
}

TEST_CASE("synthetic data determinism and structure") {
    auto a = synth_gp_data(100, 5, 1.0, 0.2, SeedSpec{75, 0});
    auto b = synth_gp_data(100, 5, 1.0, 0.2, SeedSpec{75, 0});
    CHECK(a.x.a == b.x.a);
    CHECK(a.y == b.y);

    // target variance grows with the number of bumps
    double prev = -1.0;
    for (size_t centers : {10u, 50u, 200u}) {
        auto ds = synth_gp_data(400, 5, 1.0, 0.0, SeedSpec{75, 1}, centers);
        double v = variance(ds.y);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("noise-free synthetic target is recovered by exact kernel ridge") {
    auto ds = synth_gp_data(400, 4, 1.0, 0.0, SeedSpec{76, 0});
    auto [train, test] = train_test_split(ds, 0.8, SeedSpec{76, 1});
    double y_std = std::sqrt(variance(test.y));

    auto model = kernel_ridge_fit(train.x, train.y, RbfSpec{1.0}, 1e-10);
    auto preds = kernel_ridge_predict_rows(model, test.x);
    CHECK(rmse(preds, test.y) <= 0.05 * y_std);
}

TEST_CASE("train/test split is a disjoint seeded partition") {
    auto ds = synth_gp_data(100, 3, 1.0, 0.1, SeedSpec{77, 0});
    auto [train, test] = train_test_split(ds, 0.8, SeedSpec{77, 1});
    CHECK(train.x.rows == 80);
    CHECK(test.x.rows == 20);

    auto [train2, test2] = train_test_split(ds, 0.8, SeedSpec{77, 1});
    CHECK(train.x.a == train2.x.a);
    CHECK(test.y == test2.y);
}
