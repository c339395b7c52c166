#pragma once

// Spectral quadrature oracle for the Bessel-power kernel at d=2.
//
// The kernel's spectrum is the t-fold self-convolution of the uniform
// unit-disk density. This computes that convolution numerically on a radial
// grid (polar quadrature, no Bessel functions involved) and then integrates
// cos(<omega, v>) against it with an angular trapezoid rule:
//   k(r) = int rho_t(s) s ds int_0^{2pi} cos(r s cos(phi)) dphi / mass

#include <cmath>
#include <vector>

namespace oracle {

class MaternSpectrum2D {
 public:
    explicit MaternSpectrum2D(int t, int radial = 600, int q_nodes = 240,
                              int phi_nodes = 480)
        : t_(t), n_(radial) {
        r_max_ = static_cast<double>(t);
        rho_.assign(n_, 0.0);
        // t = 1: uniform disk density 1/pi on s <= 1
        for (int k = 0; k < n_; ++k)
            rho_[k] = (grid_r(k) <= 1.0) ? 1.0 / M_PI : 0.0;
        for (int fold = 1; fold < t; ++fold) rho_ = convolve_disk(rho_, q_nodes, phi_nodes);
    }

    // k(r) for v with |v| = r
    double kernel(double r) const {
        const int phi_nodes = 2048;
        double num = 0.0, mass = 0.0;
        for (int k = 0; k < n_; ++k) {
            double s = grid_r(k);
            double ang = 0.0;
            for (int a = 0; a < phi_nodes; ++a) {
                double phi = 2.0 * M_PI * (a + 0.5) / phi_nodes;
                ang += std::cos(r * s * std::cos(phi));
            }
            ang *= 2.0 * M_PI / phi_nodes;
            double w = (k == 0 || k == n_ - 1) ? 0.5 : 1.0;  // trapezoid
            num += w * rho_[k] * s * ang;
            mass += w * rho_[k] * s * 2.0 * M_PI;
        }
        return num / mass;
    }

 private:
    double grid_r(int k) const {
        return r_max_ * static_cast<double>(k) / static_cast<double>(n_ - 1);
    }

    double rho_at(const std::vector<double>& rho, double s) const {
        if (s >= r_max_) return 0.0;
        double pos = s / r_max_ * static_cast<double>(n_ - 1);
        int lo = static_cast<int>(pos);
        if (lo >= n_ - 1) return rho[n_ - 1];
        double frac = pos - lo;
        return rho[lo] * (1.0 - frac) + rho[lo + 1] * frac;
    }

    // (rho * unit disk/pi)(s), evaluated on the radial grid by polar
    // quadrature over the disk around the evaluation point.
    std::vector<double> convolve_disk(const std::vector<double>& rho, int q_nodes,
                                      int phi_nodes) const {
        std::vector<double> out(n_, 0.0);
        #pragma omp parallel for schedule(static)
        for (int k = 0; k < n_; ++k) {
            double s = grid_r(k);
            double acc = 0.0;
            for (int iq = 0; iq < q_nodes; ++iq) {
                double q = (iq + 0.5) / q_nodes;  // radius inside the unit disk
                double inner = 0.0;
                for (int ip = 0; ip < phi_nodes; ++ip) {
                    double phi = 2.0 * M_PI * (ip + 0.5) / phi_nodes;
                    double dist =
                        std::sqrt(std::max(0.0, s * s + q * q - 2.0 * s * q * std::cos(phi)));
                    inner += rho_at(rho, dist);
                }
                acc += q * inner * (2.0 * M_PI / phi_nodes) * (1.0 / q_nodes);
            }
            out[k] = acc / M_PI;
        }
        return out;
    }

    int t_;
    int n_;
    double r_max_;
    std::vector<double> rho_;
};

}  // namespace oracle
