// Command-line surface: feature transformation, kernel approximation error
// studies, regression benchmarks, timing/memory benchmarks and sampler
// diagnostics. Every run echoes its configuration so results are reproducible
// from the log alone.
//
// Exit codes: 0 success, 2 usage error, 3 data error, 4 numerical failure.

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fastfood/baselines.hpp"
#include "fastfood/errors.hpp"
#include "fastfood/fastfood.hpp"
#include "fastfood/hadamard.hpp"
#include "fastfood/learn.hpp"
#include "fastfood/sampling.hpp"
#include "fastfood/serialize.hpp"
#include "fastfood/special.hpp"
#include "fastfood/stats.hpp"

using namespace fastfood;
namespace chrono = std::chrono;

namespace {

struct RunConfig {
    std::string command;
    std::string method = "fastfood";
    std::string kernel = "rbf";
    double sigma = 1.0;
    int matern_t = 1;
    size_t n = 2048;
    uint64_t seed = 1;
    std::string input;
    std::string output;
    std::string target_col;
    size_t reps = 100;
    int threads = 0;
    double lambda = 1e-3;
    double split = 0.8;
    std::string n_list = "512,1024,2048,4096";
    std::string d_list = "1024";
    size_t pairs = 100;
    size_t points = 4000;
    size_t dim = 10;

    std::string echo() const {
        std::ostringstream os;
        os << "# config: command=" << command << " method=" << method
           << " kernel=" << kernel << " sigma=" << sigma << " matern-t=" << matern_t
           << " n=" << n << " seed=" << seed << " lambda=" << lambda
           << " reps=" << reps << " threads=" << threads;
        if (!input.empty()) os << " input=" << input;
        if (!output.empty()) os << " output=" << output;
        if (!target_col.empty()) os << " target-col=" << target_col;
        if (command == "approx-error")
            os << " n-list=" << n_list << " pairs=" << pairs << " points=" << points
               << " dim=" << dim;
        if (command == "bench") os << " d-list=" << d_list << " n-list=" << n_list;
        if (command == "regress") os << " split=" << split;
        return os.str();
    }
};

std::vector<size_t> parse_list(const std::string& csv) {
    std::vector<size_t> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stoull(tok));
    }
    if (out.empty()) throw std::invalid_argument("empty size list");
    return out;
}

KernelSpec make_radial_spec(const RunConfig& cfg) {
    if (cfg.kernel == "rbf") return RbfSpec{cfg.sigma};
    if (cfg.kernel == "matern") return MaternSpec{cfg.sigma, cfg.matern_t};
    throw std::invalid_argument("unsupported kernel '" + cfg.kernel +
                                "' (expected rbf or matern)");
}

std::unique_ptr<FeatureMap> make_map(const RunConfig& cfg, size_t input_dim,
                                     const Matrix& train_rows) {
    KernelSpec spec = make_radial_spec(cfg);
    if (cfg.method == "fastfood")
        return std::make_unique<FastfoodFeatureMap>(
            FastfoodTransform::create(input_dim, cfg.n, spec, cfg.seed));
    if (cfg.method == "rks")
        return std::make_unique<RksFeatureMap>(
            DenseGaussianTransform::create(input_dim, cfg.n, cfg.sigma, cfg.seed));
    if (cfg.method == "rks-hashed")
        return std::make_unique<RksFeatureMap>(DenseGaussianTransform::create(
            input_dim, cfg.n, cfg.sigma, cfg.seed, true));
    if (cfg.method == "nystrom") {
        size_t landmarks = std::min(cfg.n, train_rows.rows);
        return std::make_unique<NystromFeatureMap>(
            nystrom_build(train_rows, landmarks, spec, SeedSpec{cfg.seed, 0}));
    }
    throw std::invalid_argument("unsupported method '" + cfg.method + "'");
}

std::ofstream open_output(const RunConfig& cfg) {
    std::ofstream out(cfg.output);
    if (!out) throw data_error("cannot open output file " + cfg.output);
    out << cfg.echo() << "\n";
    return out;
}

// ---------------------------------------------------------------- transform

int cmd_transform(const RunConfig& cfg) {
    Matrix x;
    if (cfg.target_col.empty()) {
        x = load_matrix(cfg.input);
    } else {
        auto ds = load_table(cfg.input, cfg.target_col);
        x = std::move(ds.x);
    }
    auto map = make_map(cfg, x.cols, x);
    Matrix phi = featurize_rows(*map, x);

    auto out = open_output(cfg);
    out << "# columns: " << phi.cols << " feature values per row\n";
    char buf[40];
    for (size_t i = 0; i < phi.rows; ++i) {
        for (size_t j = 0; j < phi.cols; ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", phi.at(i, j));
            out << buf << (j + 1 < phi.cols ? " " : "");
        }
        out << "\n";
    }
    if (!out) throw data_error("write failed for " + cfg.output);
    std::cout << "rows=" << phi.rows << " feature_dim=" << phi.cols << "\n";
    return 0;
}

// ------------------------------------------------------------- approx-error

int cmd_approx_error(const RunConfig& cfg) {
    if (cfg.method != "fastfood" && cfg.method != "rks")
        throw std::invalid_argument("approx-error supports methods fastfood and rks");
    auto sizes = parse_list(cfg.n_list);

    CounterRng rng(SeedSpec{cfg.seed, 1});
    Matrix pts(cfg.points, cfg.dim);
    for (auto& v : pts.a) v = rng.next_uniform();

    std::vector<std::pair<size_t, size_t>> pair_idx(cfg.pairs);
    for (auto& pr : pair_idx) {
        pr.first = rng.next_below(cfg.points);
        do {
            pr.second = rng.next_below(cfg.points);
        } while (pr.second == pr.first);
    }
    KernelSpec spec = make_radial_spec(cfg);
    std::vector<double> exact(cfg.pairs);
    for (size_t p = 0; p < cfg.pairs; ++p)
        exact[p] = exact_kernel(spec, pts.row_span(pair_idx[p].first),
                                pts.row_span(pair_idx[p].second));

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!cfg.output.empty()) {
        file = open_output(cfg);
        os = &file;
    } else {
        std::cout << cfg.echo() << "\n";
    }
    *os << "# n method mean_abs_err std_err note\n";

    const size_t d_pad = next_pow2(cfg.dim);
    for (size_t n : sizes) {
        const char* note = (n % d_pad == 0) ? "-" : "truncated";
        for (const std::string method : {"fastfood", "rks"}) {
            std::vector<double> errs(cfg.pairs);
            if (method == "fastfood") {
                auto tf = FastfoodTransform::create(cfg.dim, n, spec, cfg.seed);
                for (size_t p = 0; p < cfg.pairs; ++p)
                    errs[p] = std::fabs(tf.kernel_estimate(
                                  pts.row_span(pair_idx[p].first),
                                  pts.row_span(pair_idx[p].second)) -
                              exact[p]);
            } else {
                auto tf = DenseGaussianTransform::create(cfg.dim, n, cfg.sigma,
                                                         cfg.seed);
                for (size_t p = 0; p < cfg.pairs; ++p)
                    errs[p] = std::fabs(tf.kernel_estimate(
                                  pts.row_span(pair_idx[p].first),
                                  pts.row_span(pair_idx[p].second)) -
                              exact[p]);
            }
            double m = mean(errs);
            double se = std::sqrt(variance(errs) / static_cast<double>(cfg.pairs));
            char buf[160];
            std::snprintf(buf, sizeof(buf), "%zu %s %.8g %.8g %s", n, method.c_str(),
                          m, se, note);
            *os << buf << "\n";
        }
    }
    return 0;
}

// -------------------------------------------------------------------- bench

double median_time_per_call(const std::function<void()>& fn, size_t reps) {
    for (int w = 0; w < 3; ++w) fn();  // warmup
    std::vector<double> times(reps);
    for (size_t r = 0; r < reps; ++r) {
        auto t0 = chrono::steady_clock::now();
        fn();
        auto t1 = chrono::steady_clock::now();
        times[r] = chrono::duration<double>(t1 - t0).count();
    }
    std::sort(times.begin(), times.end());
    return times[reps / 2];
}

int cmd_bench(const RunConfig& cfg) {
    auto dims = parse_list(cfg.d_list);
    auto sizes = parse_list(cfg.n_list);
    for (size_t d : dims)
        if (!is_pow2(d)) throw std::invalid_argument("bench: d must be a power of two");
    for (size_t n : sizes)
        if (!is_pow2(n)) throw std::invalid_argument("bench: n must be a power of two");

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!cfg.output.empty()) {
        file = open_output(cfg);
        os = &file;
    } else {
        std::cout << cfg.echo() << "\n";
    }
    *os << "# d n t_fastfood_s t_rks_s speedup mem_fastfood_bytes mem_rks_bytes\n";

    for (size_t d : dims) {
        for (size_t n : sizes) {
            if (n < d) continue;
            auto ff = FastfoodTransform::create(d, n, RbfSpec{cfg.sigma}, cfg.seed);
            auto rks = DenseGaussianTransform::create(d, n, cfg.sigma, cfg.seed);

            CounterRng rng(SeedSpec{cfg.seed, 2});
            std::vector<double> x(d), z(n);
            for (auto& v : x) v = 2.0 * rng.next_uniform() - 1.0;

            double t_ff = median_time_per_call([&] { ff.project(x, z); }, cfg.reps);
            double t_rks = median_time_per_call([&] { rks.project(x, z); }, cfg.reps);

            // memory is the analytic stored-parameter footprint
            size_t mem_ff = ff.stored_parameter_bytes();
            size_t mem_rks = rks.stored_parameter_bytes();
            char buf[200];
            std::snprintf(buf, sizeof(buf), "%zu %zu %.8g %.8g %.3g %zu %zu", d, n,
                          t_ff, t_rks, t_rks / t_ff, mem_ff, mem_rks);
            *os << buf << "\n";
        }
    }
    return 0;
}

// ------------------------------------------------------------------ regress

int cmd_regress(const RunConfig& cfg) {
    auto ds = load_table(cfg.input, cfg.target_col.empty()
                                        ? std::nullopt
                                        : std::optional<std::string>(cfg.target_col));
    auto t0 = chrono::steady_clock::now();
    auto [train, test] = train_test_split(ds, cfg.split, SeedSpec{cfg.seed, 100});
    standardize(train);
    standardize_like(test, train);

    std::vector<double> train_pred, test_pred;
    if (cfg.method == "exact") {
        auto model = kernel_ridge_fit(train.x, train.y, make_radial_spec(cfg),
                                      cfg.lambda);
        train_pred = kernel_ridge_predict_rows(model, train.x);
        test_pred = kernel_ridge_predict_rows(model, test.x);
    } else {
        auto map = make_map(cfg, train.x.cols, train.x);
        Matrix phi_train = featurize_rows(*map, train.x);
        auto model = ridge_fit(phi_train, train.y, cfg.lambda, map.get());
        train_pred.resize(train.x.rows);
        for (size_t i = 0; i < train.x.rows; ++i)
            train_pred[i] = predict(model, phi_train.row_span(i));
        Matrix phi_test = featurize_rows(*map, test.x);
        test_pred.resize(test.x.rows);
        for (size_t i = 0; i < test.x.rows; ++i)
            test_pred[i] = predict(model, phi_test.row_span(i));
    }
    auto t1 = chrono::steady_clock::now();

    double train_rmse = rmse(train_pred, train.y, train.target_std);
    double test_rmse = rmse(test_pred, test.y, train.target_std);
    std::ostringstream rec;
    rec << "method=" << cfg.method << "\n"
        << "kernel=" << cfg.kernel << "\n"
        << "n=" << cfg.n << "\n"
        << "lambda=" << cfg.lambda << "\n"
        << "seed=" << cfg.seed << "\n"
        << "train_rows=" << train.x.rows << "\n"
        << "test_rows=" << test.x.rows << "\n"
        << "train_rmse=" << train_rmse << "\n"
        << "test_rmse=" << test_rmse << "\n"
        << "wall_time_s=" << chrono::duration<double>(t1 - t0).count() << "\n";
    std::cout << cfg.echo() << "\n" << rec.str();
    if (!cfg.output.empty()) {
        auto out = open_output(cfg);
        out << rec.str();
    }
    return 0;
}

// --------------------------------------------------------------------- diag

int cmd_diag(const RunConfig& cfg) {
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!cfg.output.empty()) {
        file = open_output(cfg);
        os = &file;
    } else {
        std::cout << cfg.echo() << "\n";
    }

    bool all_ok = true;
    auto report = [&](const std::string& name, bool ok, double stat, double bound) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%s %s stat=%.6g bound=%.6g",
                      ok ? "ok  " : "FAIL", name.c_str(), stat, bound);
        *os << buf << "\n";
        all_ok = all_ok && ok;
    };

    {  // chi radial law, KS at level 0.001
        auto s = radial_draws(RadialSampler::chi_rbf(16), 10000, SeedSpec{cfg.seed, 10});
        double d_stat = ks_statistic(s, [](double r) { return chi_cdf(r, 16.0); });
        double p = ks_pvalue(d_stat, s.size());
        report("chi_radial_ks_pvalue", p > 0.001, p, 0.001);
    }
    {  // ball radius law r^d
        const int d = 5;
        CounterRng rng(SeedSpec{cfg.seed, 11});
        std::vector<double> radii(10000), pt(d);
        for (size_t i = 0; i < radii.size(); ++i) {
            uniform_ball_at(rng, i * (d + 1), pt);
            double ss = 0.0;
            for (double v : pt) ss += v * v;
            radii[i] = std::sqrt(ss);
        }
        double d_stat = ks_statistic(radii, [](double r) {
            return std::pow(std::clamp(r, 0.0, 1.0), 5.0);
        });
        double p = ks_pvalue(d_stat, radii.size());
        report("ball_radius_ks_pvalue", p > 0.001, p, 0.001);
    }
    {  // ball convolution second moment: t d/(d+2)
        auto s = radial_draws(RadialSampler::matern_conv(4, 3), 100000,
                              SeedSpec{cfg.seed, 12});
        double msq = 0.0;
        for (double v : s) msq += v * v;
        msq /= static_cast<double>(s.size());
        double target = 3.0 * 4.0 / 6.0;
        report("ball_conv_moment_rel_err", std::fabs(msq / target - 1.0) <= 0.02,
               std::fabs(msq / target - 1.0), 0.02);
    }
    {  // gaussian stream moments
        auto xs = gaussian_diag(100000, SeedSpec{cfg.seed, 13});
        double var = variance(xs);
        report("gaussian_variance", std::fabs(var - 1.0) <= 0.03, var, 1.0);
        double m4 = 0.0;
        for (double v : xs) m4 += v * v * v * v;
        m4 /= static_cast<double>(xs.size());
        report("gaussian_fourth_moment", std::fabs(m4 - 3.0) <= 0.2, m4, 3.0);
    }
    {  // sign stream balance
        auto xs = rademacher_diag(100000, SeedSpec{cfg.seed, 14});
        double m = mean(xs);
        report("rademacher_mean", std::fabs(m) <= 0.02, m, 0.02);
    }
    {  // hashed cells: determinism and variance
        bool det = hashed_gaussian(3, 4, cfg.seed) == hashed_gaussian(3, 4, cfg.seed);
        report("hashed_deterministic", det, det ? 1.0 : 0.0, 1.0);
        std::vector<double> xs(100000);
        for (size_t i = 0; i < xs.size(); ++i)
            xs[i] = hashed_gaussian(i / 400, i % 400, cfg.seed);
        double var = variance(xs);
        report("hashed_variance", std::fabs(var - 1.0) <= 0.03, var, 1.0);
    }
    return all_ok ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Structured random feature maps: loglinear kernel expansions"};
    app.require_subcommand(1);

    RunConfig cfg;
    app.add_option("--threads", cfg.threads, "cap OpenMP threads (0 = default)");

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", cfg.seed, "master seed");
        sub->add_option("--method", cfg.method,
                        "fastfood | rks | rks-hashed | nystrom | exact");
        sub->add_option("--kernel", cfg.kernel, "rbf | matern");
        sub->add_option("--sigma", cfg.sigma, "kernel bandwidth")
            ->check(CLI::PositiveNumber);
        sub->add_option("--matern-t", cfg.matern_t, "matern convolution order")
            ->check(CLI::PositiveNumber);
        sub->add_option("--n", cfg.n, "feature pairs / landmarks");
        sub->add_option("--output", cfg.output, "output file (default stdout)");
    };

    auto* t = app.add_subcommand("transform", "write feature expansions of a table");
    add_common(t);
    t->add_option("--input", cfg.input, "input table")->required();
    t->add_option("--target-col", cfg.target_col, "column to drop (name or index)");
    if (auto* opt = t->get_option_no_throw("--output")) opt->required();

    auto* a = app.add_subcommand("approx-error",
                                 "kernel approximation error vs basis count");
    add_common(a);
    a->add_option("--n-list", cfg.n_list, "comma-separated feature counts");
    a->add_option("--pairs", cfg.pairs, "evaluation pairs");
    a->add_option("--points", cfg.points, "sample points");
    a->add_option("--dim", cfg.dim, "input dimension");

    auto* b = app.add_subcommand("bench", "timing and memory vs the dense baseline");
    add_common(b);
    b->add_option("--d-list", cfg.d_list, "comma-separated input dimensions");
    b->add_option("--n-list", cfg.n_list, "comma-separated feature counts");
    b->add_option("--reps", cfg.reps, "timing repetitions");

    auto* r = app.add_subcommand("regress", "ridge regression benchmark on a table");
    add_common(r);
    r->add_option("--input", cfg.input, "input table")->required();
    r->add_option("--target-col", cfg.target_col, "target column (name or index)");
    r->add_option("--lambda", cfg.lambda, "ridge penalty")->check(CLI::PositiveNumber);
    r->add_option("--split", cfg.split, "train fraction");

    auto* g = app.add_subcommand("diag", "sampler diagnostics report");
    add_common(g);

    try {
        app.parse(argc, argv);
        if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
        if (t->parsed()) {
            cfg.command = "transform";
            std::cout << cfg.echo() << "\n";
            return cmd_transform(cfg);
        }
        if (a->parsed()) {
            cfg.command = "approx-error";
            return cmd_approx_error(cfg);
        }
        if (b->parsed()) {
            cfg.command = "bench";
            return cmd_bench(cfg);
        }
        if (r->parsed()) {
            cfg.command = "regress";
            return cmd_regress(cfg);
        }
        if (g->parsed()) {
            cfg.command = "diag";
            return cmd_diag(cfg);
        }
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    } catch (const data_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
