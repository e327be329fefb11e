#include "semiclassica/root_finding.hpp"
#include "semiclassica/errors.hpp"

#include <cmath>

namespace semiclassica::numkit {

double find_root(const std::function<double(double)>& f, double a, double b,
                 const RootOptions& opt) {
    double fa = f(a), fb = f(b);
    if (fa == 0) return a;
    if (fb == 0) return b;
    if ((fa > 0) == (fb > 0))
        throw NoSignChange("find_root: no sign change over the bracket");

    // Brent's method
    double c = a, fc = fa, d = b - a, e = d;
    for (int iter = 0; iter < opt.max_iterations; ++iter) {
        if ((fb > 0) == (fc > 0)) {
            c = a; fc = fa; d = b - a; e = d;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        double tol = 2.0 * 1e-16 * std::fabs(b) + 0.5 * opt.x_tol;
        double m = 0.5 * (c - b);
        if (std::fabs(m) <= tol || fb == 0.0 ||
            (opt.f_tol > 0 && std::fabs(fb) < opt.f_tol))
            return b;
        if (std::fabs(e) < tol || std::fabs(fa) <= std::fabs(fb)) {
            d = m; e = m;  // bisection
        } else {
            double s = fb / fa, p, q2;
            if (a == c) {       // secant
                p = 2.0 * m * s;
                q2 = 1.0 - s;
            } else {            // inverse quadratic
                double q = fa / fc, r = fb / fc;
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0));
                q2 = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0) q2 = -q2; else p = -p;
            if (2.0 * p < std::min(3.0 * m * q2 - std::fabs(tol * q2), std::fabs(e * q2))) {
                e = d; d = p / q2;
            } else {
                d = m; e = m;
            }
        }
        a = b; fa = fb;
        b += (std::fabs(d) > tol) ? d : (m > 0 ? tol : -tol);
        fb = f(b);
    }
    throw MaxIterations("find_root: iteration budget exhausted");
}

ComplexRootResult find_root_complex(
    const std::function<std::complex<double>(std::complex<double>)>& f,
    std::complex<double> guess, const ComplexNewtonOptions& opt) {
    using cplx = std::complex<double>;
    cplx z = guess;
    double prev_step = INFINITY;
    int growth_streak = 0;
    for (int iter = 1; iter <= opt.max_iterations; ++iter) {
        cplx fz = f(z);
        double res = std::abs(fz);
        if (res < opt.f_tol) return {z, iter - 1, res};
        double h = opt.diff_step * (1.0 + std::abs(z));
        cplx deriv = (f(z + h) - f(z - h)) / (2.0 * h);
        if (std::abs(deriv) == 0.0 || std::isnan(std::abs(deriv)))
            throw Diverged("find_root_complex: vanishing derivative estimate");
        cplx step = fz / deriv;
        double slen = std::abs(step);
        if (slen > 4.0 * prev_step) {
            if (++growth_streak >= 3)
                throw Diverged("find_root_complex: step growth");
        } else {
            growth_streak = 0;
        }
        prev_step = slen;
        z -= step;
        if (std::isnan(z.real()) || std::isnan(z.imag()))
            throw Diverged("find_root_complex: iterate became NaN");
    }
    double res = std::abs(f(z));
    if (res < opt.f_tol) return {z, opt.max_iterations, res};
    throw MaxIterations("find_root_complex: iteration budget exhausted");
}

} // namespace semiclassica::numkit
