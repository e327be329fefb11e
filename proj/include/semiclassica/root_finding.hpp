#ifndef SEMICLASSICA_ROOT_FINDING_HPP
#define SEMICLASSICA_ROOT_FINDING_HPP

#include <complex>
#include <functional>

namespace semiclassica::numkit {

struct RootOptions {
    double x_tol = 1e-13;      ///< bracket width termination (relative to scale)
    double f_tol = 0.0;        ///< optional residual termination (0 = bracket only)
    int max_iterations = 200;
};

/** Bracketing bisection/secant hybrid (Brent).  Requires f(a) and f(b) of
    opposite sign; throws NoSignChange otherwise. */
double find_root(const std::function<double(double)>& f, double a, double b,
                 const RootOptions& opt = RootOptions());

struct ComplexNewtonOptions {
    double f_tol = 1e-12;
    int max_iterations = 100;
    double diff_step = 1e-7;   ///< central-difference step scale, h = step*(1+|z|)
};

struct ComplexRootResult {
    std::complex<double> root;
    int iterations = 0;
    double residual = 0.0;
};

/** Newton iteration in the complex plane with the derivative estimated by
    central differences (the integrands this serves are evaluable but not
    differentiable in closed form).  Throws Diverged on sustained step growth
    and MaxIterations when the budget runs out. */
ComplexRootResult find_root_complex(
    const std::function<std::complex<double>(std::complex<double>)>& f,
    std::complex<double> guess, const ComplexNewtonOptions& opt = ComplexNewtonOptions());

} // namespace semiclassica::numkit

#endif
