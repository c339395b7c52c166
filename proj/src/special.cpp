#include "fastfood/special.hpp"

#include <cmath>
#include <stdexcept>

namespace fastfood {

double inv_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("inv_normal_cdf: p must be in (0,1)");
    const double q = p - 0.5;
    double r;
    if (std::fabs(q) <= 0.425) {
        r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                     6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                   1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
                 1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
               (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                     3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                   5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
                 4.2313330701600911252e1) * r + 1.0);
    }
    r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        val = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                    2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                  3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
                4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
              (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                    1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                  6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
                2.05319162663775882187e0) * r + 1.0);
    } else {
        r -= 5.0;
        val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                    1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                  2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
                5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
              (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                    1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                  1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                5.99832206555887937690e-1) * r + 1.0);
    }
    return (q < 0.0) ? -val : val;
}

double gamma_p(double a, double x) {
    if (a <= 0.0 || x < 0.0)
        throw std::invalid_argument("gamma_p: need a > 0, x >= 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) {
        // series representation
        double ap = a;
        double sum = 1.0 / a;
        double del = sum;
        for (int k = 0; k < 1000; ++k) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
        }
        return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    // continued fraction for Q(a,x), modified Lentz
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 1000; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    double q = std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
    return 1.0 - q;
}

double chi_cdf(double r, double k) {
    if (r <= 0.0) return 0.0;
    return gamma_p(0.5 * k, 0.5 * r * r);
}

double sphere_surface(int k) {
    if (k < 0) throw std::invalid_argument("sphere_surface: k >= 0 required");
    double kp1 = 0.5 * (k + 1);
    return std::exp(std::log(2.0) + kp1 * std::log(M_PI) - std::lgamma(kp1));
}

double bessel_j_normalized(double nu, double r) {
    if (nu < 0.0) throw std::invalid_argument("bessel_j_normalized: nu >= 0");
    if (r < 0.0 || r > 30.0)
        throw std::out_of_range("bessel_j_normalized: series budget is r in [0,30]");
    // sum_k (-1)^k (r^2/4)^k / (k! (nu+1)...(nu+k)); starts at 1.
    const double q = 0.25 * r * r;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 0; k < 400; ++k) {
        term *= -q / ((k + 1.0) * (nu + k + 1.0));
        sum += term;
        if (k >= 40 && std::fabs(term) < 1e-16 * std::fabs(sum)) break;
    }
    return sum;
}

double bessel_j(double nu, double r) {
    if (r == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    return bessel_j_normalized(nu, r) *
           std::exp(nu * std::log(0.5 * r) - std::lgamma(nu + 1.0));
}

}  // namespace fastfood
