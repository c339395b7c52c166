// Compares the OpenMP-parallel kernels against their serial references and the
// structured transform against the dense baseline. Row-parallel paths must be
// bit-identical to a single-threaded run; the eigensolvers agree to tolerance.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "fastfood/baselines.hpp"
#include "fastfood/fastfood.hpp"
#include "fastfood/featuremap.hpp"
#include "fastfood/hadamard.hpp"
#include "fastfood/linalg.hpp"
#include "fastfood/sampling.hpp"

using namespace fastfood;
namespace chrono = std::chrono;

namespace {

double time_once(const std::function<void()>& fn) {
    auto t0 = chrono::steady_clock::now();
    fn();
    auto t1 = chrono::steady_clock::now();
    return chrono::duration<double>(t1 - t0).count();
}

double best_of(const std::function<void()>& fn, int reps = 3) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) best = std::min(best, time_once(fn));
    return best;
}

void row(const std::string& name, double serial, double parallel, bool identical) {
    std::printf("%-28s %10.4fs %10.4fs %7.2fx  %s\n", name.c_str(), serial, parallel,
                serial / parallel, identical ? "outputs identical" : "within tolerance");
}

}  // namespace

int main() {
    const int max_threads = omp_get_max_threads();
    std::printf("threads: 1 vs %d\n", max_threads);
    std::printf("%-28s %11s %11s %8s\n", "kernel", "serial", "parallel", "speedup");

    {  // batch Walsh-Hadamard rows
        const size_t rows = 4096, d = 1024;
        std::vector<double> base(rows * d);
        CounterRng rng(SeedSpec{1, 0});
        for (auto& v : base) v = rng.next_uniform();

        auto a = base, b = base;
        omp_set_num_threads(1);
        double ts = best_of([&] { fwht_rows(a.data(), rows, d); });
        omp_set_num_threads(max_threads);
        double tp = best_of([&] { fwht_rows(b.data(), rows, d); });
        row("fwht_rows 4096x1024", ts, tp, a == b);
    }

    {  // batch featurization
        const size_t m = 4000, dim = 10, n = 2048;
        CounterRng rng(SeedSpec{2, 0});
        Matrix x(m, dim);
        for (auto& v : x.a) v = rng.next_uniform();
        FastfoodFeatureMap map(FastfoodTransform::create(dim, n, RbfSpec{1.0}, 7));

        omp_set_num_threads(1);
        Matrix phi_s;
        double ts = best_of([&] { phi_s = featurize_rows(map, x); });
        omp_set_num_threads(max_threads);
        Matrix phi_p;
        double tp = best_of([&] { phi_p = featurize_rows(map, x); });
        row("featurize 4000x(2x2048)", ts, tp, phi_s.a == phi_p.a);
    }

    {  // normal-equations accumulation
        const size_t m = 1500, p = 1024;
        CounterRng rng(SeedSpec{3, 0});
        Matrix phi(m, p);
        for (auto& v : phi.a) v = 2.0 * rng.next_uniform() - 1.0;

        omp_set_num_threads(1);
        Matrix g_s;
        double ts = best_of([&] { g_s = gram_tt(phi); });
        omp_set_num_threads(max_threads);
        Matrix g_p;
        double tp = best_of([&] { g_p = gram_tt(phi); });
        row("gram 1500x1024", ts, tp, g_s.a == g_p.a);
    }

    {  // symmetric eigensolver: serial cyclic vs round-robin parallel
        const size_t nn = 384;
        CounterRng rng(SeedSpec{4, 0});
        Matrix a(nn, nn);
        for (size_t i = 0; i < nn; ++i)
            for (size_t j = i; j < nn; ++j) {
                double v = 2.0 * rng.next_uniform() - 1.0;
                a.at(i, j) = v;
                a.at(j, i) = v;
            }
        omp_set_num_threads(1);
        EigenResult es;
        double ts = best_of([&] { es = jacobi_eigen_serial(a); }, 1);
        omp_set_num_threads(max_threads);
        EigenResult ep;
        double tp = best_of([&] { ep = jacobi_eigen(a); }, 1);
        auto ws = es.w, wp = ep.w;
        std::sort(ws.begin(), ws.end());
        std::sort(wp.begin(), wp.end());
        double dev = 0.0;
        for (size_t i = 0; i < nn; ++i) dev = std::max(dev, std::fabs(ws[i] - wp[i]));
        row("jacobi_eigen 384", ts, tp, false);
        std::printf("  max eigenvalue deviation: %.3g\n", dev);
    }

    {  // structured transform vs dense projection, per vector
        const size_t d = 1024, n = 16384;
        auto ff = FastfoodTransform::create(d, n, RbfSpec{1.0}, 11);
        auto rks = DenseGaussianTransform::create(d, n, 1.0, 11);
        CounterRng rng(SeedSpec{5, 0});
        std::vector<double> x(d), z(n);
        for (auto& v : x) v = rng.next_uniform();

        omp_set_num_threads(max_threads);
        double t_ff = best_of([&] {
            for (int k = 0; k < 50; ++k) ff.project(x, z);
        });
        double t_rks = best_of([&] {
            for (int k = 0; k < 50; ++k) rks.project(x, z);
        });
        std::printf("%-28s %10.6fs %10.6fs %7.1fx  per 50 vectors\n",
                    "structured vs dense d=1024", t_ff, t_rks, t_rks / t_ff);
        std::printf("  parameter bytes: %zu vs %zu (%.0fx)\n",
                    ff.stored_parameter_bytes(), rks.stored_parameter_bytes(),
                    static_cast<double>(rks.stored_parameter_bytes()) /
                        static_cast<double>(ff.stored_parameter_bytes()));
    }
    return 0;
}
