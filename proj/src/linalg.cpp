#include "fastfood/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fastfood/errors.hpp"

namespace fastfood {

std::vector<double> matvec(const Matrix& m, std::span<const double> x) {
    if (x.size() != m.cols) throw std::invalid_argument("matvec: dimension mismatch");
    std::vector<double> y(m.rows, 0.0);
    #pragma omp parallel for schedule(static) if (m.rows * m.cols > 65536)
    for (long i = 0; i < static_cast<long>(m.rows); ++i) {
        const double* row = m.row(i);
        double acc = 0.0;
        #pragma omp simd reduction(+ : acc)
        for (size_t j = 0; j < m.cols; ++j) acc += row[j] * x[j];
        y[i] = acc;
    }
    return y;
}

Matrix gram_tt(const Matrix& a) {
    const size_t p = a.cols, m = a.rows;
    Matrix c(p, p, 0.0);
    // Upper triangle, parallel over tiles of output rows. Tiling keeps each
    // pass over A shared by a whole tile instead of a single output row.
    const size_t tile = 48;
    const size_t ntiles = (p + tile - 1) / tile;
    #pragma omp parallel for schedule(dynamic)
    for (long ti = 0; ti < static_cast<long>(ntiles); ++ti) {
        const size_t i0 = static_cast<size_t>(ti) * tile;
        const size_t i1 = std::min(i0 + tile, p);
        for (size_t k = 0; k < m; ++k) {
            const double* row = a.row(k);
            for (size_t i = i0; i < i1; ++i) {
                const double aki = row[i];
                if (aki == 0.0) continue;
                double* out = c.row(i);
                #pragma omp simd
                for (size_t j = i; j < p; ++j) out[j] += aki * row[j];
            }
        }
    }
    for (size_t i = 0; i < p; ++i)
        for (size_t j = 0; j < i; ++j) c.at(i, j) = c.at(j, i);
    return c;
}

std::vector<double> cholesky_solve(Matrix a, std::span<const double> b, double lambda) {
    const size_t n = a.rows;
    if (a.cols != n || b.size() != n)
        throw std::invalid_argument("cholesky_solve: dimension mismatch");
    for (size_t i = 0; i < n; ++i) a.at(i, i) += lambda;

    // in-place lower Cholesky
    for (size_t k = 0; k < n; ++k) {
        double diag = a.at(k, k);
        for (size_t j = 0; j < k; ++j) diag -= a.at(k, j) * a.at(k, j);
        if (!(diag > 0.0))
            throw numerical_error(
                "cholesky_solve: matrix not positive definite; try a larger lambda");
        diag = std::sqrt(diag);
        a.at(k, k) = diag;
        const double inv = 1.0 / diag;
        #pragma omp parallel for schedule(static) if (n - k > 128)
        for (long i = static_cast<long>(k) + 1; i < static_cast<long>(n); ++i) {
            double acc = a.at(i, k);
            const double* ri = a.row(i);
            const double* rk = a.row(k);
            #pragma omp simd reduction(- : acc)
            for (size_t j = 0; j < k; ++j) acc -= ri[j] * rk[j];
            a.at(i, k) = acc * inv;
        }
    }

    // forward then backward substitution
    std::vector<double> x(b.begin(), b.end());
    for (size_t i = 0; i < n; ++i) {
        double acc = x[i];
        for (size_t j = 0; j < i; ++j) acc -= a.at(i, j) * x[j];
        x[i] = acc / a.at(i, i);
    }
    for (size_t ii = n; ii-- > 0;) {
        double acc = x[ii];
        for (size_t j = ii + 1; j < n; ++j) acc -= a.at(j, ii) * x[j];
        x[ii] = acc / a.at(ii, ii);
    }
    return x;
}

namespace {

double offdiag_norm(const Matrix& a) {
    double ss = 0.0;
    for (size_t i = 0; i < a.rows; ++i)
        for (size_t j = 0; j < a.cols; ++j)
            if (i != j) ss += a.at(i, j) * a.at(i, j);
    return std::sqrt(ss);
}

double frob_norm(const Matrix& a) {
    double ss = 0.0;
    for (double v : a.a) ss += v * v;
    return std::sqrt(ss);
}

// Rotation (c, s) annihilating a_pq for the symmetric 2x2 block.
inline void rotation_for(double app, double aqq, double apq, double& c, double& s) {
    if (apq == 0.0) {
        c = 1.0;
        s = 0.0;
        return;
    }
    double theta = 0.5 * (aqq - app) / apq;
    double t = (theta >= 0.0 ? 1.0 : -1.0) /
               (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
    c = 1.0 / std::sqrt(t * t + 1.0);
    s = t * c;
}

EigenResult finish(Matrix& a, Matrix& u) {
    EigenResult r;
    r.w.resize(a.rows);
    for (size_t i = 0; i < a.rows; ++i) r.w[i] = a.at(i, i);
    r.u = std::move(u);
    return r;
}

}  // namespace

EigenResult jacobi_eigen_serial(Matrix a, double tol, int max_sweeps) {
    const size_t n = a.rows;
    if (a.cols != n) throw std::invalid_argument("jacobi_eigen: square matrix required");
    Matrix u(n, n, 0.0);
    for (size_t i = 0; i < n; ++i) u.at(i, i) = 1.0;
    if (n < 2) return finish(a, u);

    const double stop = tol * frob_norm(a);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (offdiag_norm(a) <= stop) return finish(a, u);
        const double skip = offdiag_norm(a) / static_cast<double>(n) * 1e-3;
        for (size_t p = 0; p + 1 < n; ++p) {
            for (size_t q = p + 1; q < n; ++q) {
                if (std::fabs(a.at(p, q)) <= skip) continue;
                double c, s;
                rotation_for(a.at(p, p), a.at(q, q), a.at(p, q), c, s);
                for (size_t j = 0; j < n; ++j) {  // A <- J^T A
                    double apj = a.at(p, j), aqj = a.at(q, j);
                    a.at(p, j) = c * apj - s * aqj;
                    a.at(q, j) = s * apj + c * aqj;
                }
                for (size_t i = 0; i < n; ++i) {  // A <- A J, U <- U J
                    double aip = a.at(i, p), aiq = a.at(i, q);
                    a.at(i, p) = c * aip - s * aiq;
                    a.at(i, q) = s * aip + c * aiq;
                    double uip = u.at(i, p), uiq = u.at(i, q);
                    u.at(i, p) = c * uip - s * uiq;
                    u.at(i, q) = s * uip + c * uiq;
                }
            }
        }
    }
    if (offdiag_norm(a) > stop)
        throw numerical_error("jacobi_eigen_serial: no convergence");
    return finish(a, u);
}

EigenResult jacobi_eigen(Matrix a, double tol, int max_sweeps) {
    const size_t n = a.rows;
    if (a.cols != n) throw std::invalid_argument("jacobi_eigen: square matrix required");
    Matrix u(n, n, 0.0);
    for (size_t i = 0; i < n; ++i) u.at(i, i) = 1.0;
    if (n < 2) return finish(a, u);

    // Round-robin tournament schedule over an even number of slots.
    const size_t slots = n + (n % 2);
    std::vector<size_t> ring(slots);
    for (size_t i = 0; i < slots; ++i) ring[i] = i;  // slot n (if padded) is a bye

    const size_t npairs = slots / 2;
    std::vector<double> cs(npairs), sn(npairs);
    std::vector<size_t> pp(npairs), qq(npairs);
    const double stop = tol * frob_norm(a);

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (offdiag_norm(a) <= stop) return finish(a, u);
        const double skip = offdiag_norm(a) / static_cast<double>(n) * 1e-3;
        for (size_t round = 0; round + 1 < slots; ++round) {
            size_t active = 0;
            for (size_t k = 0; k < npairs; ++k) {
                size_t x = ring[k], y = ring[slots - 1 - k];
                if (x >= n || y >= n) continue;
                size_t p = std::min(x, y), q = std::max(x, y);
                if (std::fabs(a.at(p, q)) <= skip) continue;
                rotation_for(a.at(p, p), a.at(q, q), a.at(p, q), cs[active], sn[active]);
                pp[active] = p;
                qq[active] = q;
                ++active;
            }
            // two-phase two-sided update: B = J^T A, then A = B J
            #pragma omp parallel for schedule(static) if (n >= 128)
            for (long k = 0; k < static_cast<long>(active); ++k) {
                const size_t p = pp[k], q = qq[k];
                const double c = cs[k], s = sn[k];
                double* rp = a.row(p);
                double* rq = a.row(q);
                #pragma omp simd
                for (size_t j = 0; j < n; ++j) {
                    double apj = rp[j], aqj = rq[j];
                    rp[j] = c * apj - s * aqj;
                    rq[j] = s * apj + c * aqj;
                }
            }
            #pragma omp parallel for schedule(static) if (n >= 128)
            for (long k = 0; k < static_cast<long>(active); ++k) {
                const size_t p = pp[k], q = qq[k];
                const double c = cs[k], s = sn[k];
                for (size_t i = 0; i < n; ++i) {
                    double aip = a.at(i, p), aiq = a.at(i, q);
                    a.at(i, p) = c * aip - s * aiq;
                    a.at(i, q) = s * aip + c * aiq;
                    double uip = u.at(i, p), uiq = u.at(i, q);
                    u.at(i, p) = c * uip - s * uiq;
                    u.at(i, q) = s * uip + c * uiq;
                }
            }
            // rotate the ring, keeping slot 0 fixed
            size_t last = ring[slots - 1];
            for (size_t k = slots - 1; k > 1; --k) ring[k] = ring[k - 1];
            ring[1] = last;
        }
    }
    if (offdiag_norm(a) > stop) throw numerical_error("jacobi_eigen: no convergence");
    return finish(a, u);
}

}  // namespace fastfood
