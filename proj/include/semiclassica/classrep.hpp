#ifndef SEMICLASSICA_CLASSREP_HPP
#define SEMICLASSICA_CLASSREP_HPP

#include "semiclassica/errors.hpp"

#include <functional>
#include <vector>

namespace semiclassica::classrep {

/** Classical representation of quantum states: a quantum probability density
    rho(x) is expanded over microcanonical classical densities,
      rho(x) = int q(eps,x) phi(eps) d eps,
    and the energy distribution phi is recovered by the inverse Abel transform.
    The harmonic oscillator admits closed forms throughout and the driven
    oscillator gives exactly the quantum transition probabilities. */

class DerivativeNoise : public NumericalError {
public:
    explicit DerivativeNoise(const std::string& msg) : NumericalError(msg) {}
};

/** Symmetric well V(x) = V(-x), V(0) = 0, monotone on x > 0.  Derivative
    callables are optional; they sharpen the kernel quadrature when present
    (finite differences otherwise). */
struct SymmetricWell {
    std::function<double(double)> V;
    std::function<double(double)> dV;    ///< optional
    std::function<double(double)> d2V;   ///< optional
    std::function<double(double)> d3V;   ///< optional
    double mass = 1.0;

    double x_of_V(double v) const;   ///< inverse of V on x >= 0
    double period(double eps) const; ///< T(eps) = 2 sqrt(2m) int dx/sqrt(eps - V)
    double dV_dx(double x) const;    ///< analytic if provided, else central FD

    static SymmetricWell harmonic(double omega, double mass = 1.0);
};

struct EnergyDistribution {
    std::vector<double> eps;
    std::vector<double> phi;
    int n = -1;  ///< quantum label when applicable
};

/// Microcanonical position density q(eps, x) = sqrt(2m) / (T(eps) sqrt(eps - V(x))).
double microcanonical_density(const SymmetricWell& well, double eps, double x);

/** Forward transform: rho(x) from the energy distribution phi(eps) supported
    on [V(x), eps_max]. */
double abel_forward(const std::function<double(double)>& phi, double eps_max,
                    const SymmetricWell& well, double x);

/** Inverse transform: phi(eps) from a density rho(x), differentiable in V and
    negligible beyond x_of_V(V_max). */
double abel_inverse(const std::function<double(double)>& rho, double V_max,
                    const SymmetricWell& well, double eps);

/// Closed-form oscillator energy distribution phi_n(eps) (quasi-probability:
/// it changes sign n times; the sum rules hold exactly).
double ho_phi(int n, double omega, double eps);

/// Sampled oscillator distribution on a uniform grid [0, eps_max].
EnergyDistribution ho_distribution(int n, double omega, int points = 400,
                                   double eps_max = -1.0);

/// Transform kernel Q(mu, eps) by its quadrature definition.
double balance_kernel(const SymmetricWell& well, double mu, double eps);

/** L1 residual of the transformed eigenvalue equation
    (eps - E) phi~ = (hbar^2/m) int Q(mu,eps) phi~'''(mu) dmu
    on the given eps grid; phi~ = phi/T and its third derivative are supplied
    in closed form by the caller. */
double balance_residual(const std::function<double(double)>& phi_tilde,
                        const std::function<double(double)>& phi_tilde_d3,
                        double E_n, const SymmetricWell& well,
                        const std::vector<double>& eps_grid, double mu_max);

struct FeynmanDrive {
    double omega = 1.0;
    double nu = 0.0;  ///< absorbed fluence, au energy
    double gamma() const { return nu / omega; }  // hbar = 1
};

/// nu = |int alpha(t) e^{i omega t} dt|^2 / (2 m^2) for a sampled pulse.
double drive_fluence(const std::function<double(double)>& alpha, double t0, double t1,
                     double omega, double mass = 1.0);

struct TransitionProbability {
    double closed_form;     ///< exp(-gamma) gamma^|k-n| (n_</n_>)! ... [Laguerre]^2
    double double_integral; ///< quadrature over phi_k p(mu,eps) phi_n
};

/** Transition probability n -> k of the driven oscillator, evaluated both by
    the closed form and by the classical-ensemble double integral. */
TransitionProbability feynman_transition(int n, int k, const FeynmanDrive& drive);

/// Closed form alone (cheap; used for sums over many final states).
double feynman_closed(int n, int k, double gamma);

/// Final-state energy density p(mu, eps) of the driven classical oscillator.
double feynman_kernel(double mu, double eps, double nu);

/** Semiclassical phase W(eps) = 2 int_eps^{E_n} sqrt(2m(E_n-e))/V'(x(e)) de
    governing the oscillatory structure of the scaled distribution. */
double semiclassical_phase(const SymmetricWell& well, double E_n, double eps);

} // namespace semiclassica::classrep

#endif
