#ifndef SEMICLASSICA_QUADRATURE_HPP
#define SEMICLASSICA_QUADRATURE_HPP

#include <complex>
#include <functional>
#include <vector>

namespace semiclassica::numkit {

/// How the integrand behaves at the interval endpoints.  The inverse-sqrt
/// modes declare that f ~ C/sqrt(x-a) (resp. C/sqrt(b-x)) there; the
/// integrator removes the singularity with the substitution x = a + u^2
/// (resp. b - u^2) before subdividing.
enum class EndpointMode { regular, inv_sqrt_left, inv_sqrt_right, inv_sqrt_both };

struct Quadrature {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 4000;
    EndpointMode endpoint_mode = EndpointMode::regular;

    Quadrature() = default;
    Quadrature(double atol, double rtol, int maxsub = 4000,
               EndpointMode mode = EndpointMode::regular)
        : abs_tol(atol), rel_tol(rtol), max_subdivisions(maxsub), endpoint_mode(mode) {}
};

/** Adaptive Gauss-Kronrod integration of f over (a,b).
    Throws NonConvergent when the subdivision budget is exhausted and
    NumericalError when the integrand produces NaN. */
double integrate(const std::function<double(double)>& f, double a, double b,
                 const Quadrature& q = Quadrature());

/// Fixed-order Gauss-Legendre rule on [a,b] (no error control); n in {8,16,32,64}.
double gauss_legendre(const std::function<double(double)>& f, double a, double b, int n);

/// Gauss-Legendre nodes/weights on [a,b] for caller-driven loops.
void gauss_legendre_nodes(int n, double a, double b,
                          std::vector<double>& x, std::vector<double>& w);

/// Gauss-Legendre along the straight segment [0,1] in a complex-valued integrand.
std::complex<double> gauss_legendre_complex(
    const std::function<std::complex<double>(double)>& f, int n);

} // namespace semiclassica::numkit

#endif
