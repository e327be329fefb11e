#include "semiclassica/classrep.hpp"
#include "semiclassica/quadrature.hpp"
#include "semiclassica/root_finding.hpp"

#include <algorithm>
#include <cmath>

namespace semiclassica::classrep {

namespace {

// generalized Laguerre L_n^{(a)}(x) by the three-term recurrence
double laguerre(int n, double a, double x) {
    if (n == 0) return 1.0;
    double lm1 = 1.0, l = 1.0 + a - x;
    for (int k = 1; k < n; ++k) {
        double lp1 = ((2.0 * k + 1.0 + a - x) * l - (k + a) * lm1) / (k + 1.0);
        lm1 = l;
        l = lp1;
    }
    return l;
}

double factorial_ratio(int small, int large) {  // small! / large!
    double r = 1.0;
    for (int k = small + 1; k <= large; ++k) r /= k;
    return r;
}

} // namespace

double SymmetricWell::x_of_V(double v) const {
    if (v <= 0) return 0.0;
    double hi = 1.0;
    int guard = 0;
    while (V(hi) < v) {
        hi *= 2;
        if (++guard > 200) throw NumericalError("SymmetricWell: inverse out of range");
    }
    numkit::RootOptions ro;
    ro.x_tol = 1e-14;
    return numkit::find_root([&](double x) { return V(x) - v; }, 0.0, hi, ro);
}

double SymmetricWell::period(double eps) const {
    if (eps <= 0) throw InvalidArgument("SymmetricWell::period: eps > 0 required");
    double xt = x_of_V(eps);
    // x = xt - u^2 absorbs the turning-point singularity; below u_cut the
    // subtraction eps - V is pure roundoff, so that sliver is integrated
    // analytically with the local slope
    double U = std::sqrt(xt);
    double u_cut = 1e-5 * U;
    auto g = [&](double u) {
        double d = eps - V(xt - u * u);
        return 2.0 * u / std::sqrt(std::max(d, 1e-300));
    };
    numkit::Quadrature q(1e-12, 1e-11, 4000);
    double I = numkit::integrate(g, u_cut, U, q);
    I += 2.0 * u_cut / std::sqrt(dV_dx(xt));
    return 2.0 * std::sqrt(2.0 * mass) * I;
}

double SymmetricWell::dV_dx(double x) const {
    if (dV) return dV(x);
    double h = 1e-6 * (1.0 + std::fabs(x));
    return (V(x + h) - V(x - h)) / (2.0 * h);
}

SymmetricWell SymmetricWell::harmonic(double omega, double mass) {
    SymmetricWell w;
    double k = mass * omega * omega;
    w.V = [k](double x) { return 0.5 * k * x * x; };
    w.dV = [k](double x) { return k * x; };
    w.d2V = [k](double) { return k; };
    w.d3V = [](double) { return 0.0; };
    w.mass = mass;
    return w;
}

double microcanonical_density(const SymmetricWell& well, double eps, double x) {
    double gap = eps - well.V(x);
    if (gap <= 0) return 0.0;
    return std::sqrt(2.0 * well.mass) / (well.period(eps) * std::sqrt(gap));
}

double abel_forward(const std::function<double(double)>& phi, double eps_max,
                    const SymmetricWell& well, double x) {
    double v0 = well.V(x);
    if (v0 >= eps_max) return 0.0;
    double s2m = std::sqrt(2.0 * well.mass);
    numkit::Quadrature q(1e-9, 1e-9, 4000, numkit::EndpointMode::inv_sqrt_left);
    return numkit::integrate(
        [&](double eps) {
            return s2m * phi(eps) / (well.period(eps) * std::sqrt(eps - v0));
        },
        v0, eps_max, q);
}

double abel_inverse(const std::function<double(double)>& rho, double V_max,
                    const SymmetricWell& well, double eps) {
    if (eps <= 0 || eps >= V_max)
        throw InvalidArgument("abel_inverse: eps must lie inside (0, V_max)");

    auto rho_of_V = [&](double v) { return rho(well.x_of_V(v)); };
    auto drho_dV = [&](double v) {
        double h = 1e-5 * (1.0 + std::fabs(v));
        return (rho_of_V(v + h) - rho_of_V(v - h)) / (2.0 * h);
    };
    // flag obviously noisy derivative data before integrating over it
    for (double frac : {0.25, 0.5, 0.75}) {
        double v = eps + frac * (V_max - eps);
        double h = 1e-5 * (1.0 + std::fabs(v));
        double d1 = drho_dV(v);
        double d2 = (rho_of_V(v + 0.5 * h) - rho_of_V(v - 0.5 * h)) / h;
        double scale = std::max({std::fabs(d1), std::fabs(d2), 1e-10});
        if (std::fabs(d1 - d2) > 2e-2 * scale)
            throw DerivativeNoise("abel_inverse: dRho/dV is not smooth at this scale");
    }

    numkit::Quadrature q(1e-9, 1e-9, 4000, numkit::EndpointMode::inv_sqrt_left);
    double I = numkit::integrate(
        [&](double v) { return drho_dV(v) / std::sqrt(v - eps); }, eps, V_max, q);
    return -well.period(eps) / (M_PI * std::sqrt(2.0 * well.mass)) * I;
}

double ho_phi(int n, double omega, double eps) {
    if (n < 0 || omega <= 0) throw InvalidArgument("ho_phi: bad arguments");
    if (eps < 0) return 0.0;
    // the printed closed form carries an implicit (-1)^n: without it the
    // normalization integral of L_n(4eps/w) e^{-2eps/w} alternates in sign
    double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return sign * 2.0 / omega * std::exp(-2.0 * eps / omega) *
           laguerre(n, 0.0, 4.0 * eps / omega);
}

EnergyDistribution ho_distribution(int n, double omega, int points, double eps_max) {
    if (points < 2) throw InvalidArgument("ho_distribution: need at least 2 points");
    if (eps_max <= 0) eps_max = omega * (n + 0.5) + 12.0 * omega;
    EnergyDistribution d;
    d.n = n;
    d.eps.resize(points);
    d.phi.resize(points);
    for (int i = 0; i < points; ++i) {
        d.eps[i] = eps_max * i / (points - 1.0);
        d.phi[i] = ho_phi(n, omega, d.eps[i]);
    }
    return d;
}

double balance_kernel(const SymmetricWell& well, double mu, double eps) {
    if (!(mu > eps) || eps < 0)
        throw InvalidArgument("balance_kernel: requires mu > eps >= 0");
    double x1 = well.x_of_V(eps), x2 = well.x_of_V(mu);

    auto d2V = [&](double x) {
        if (well.d2V) return well.d2V(x);
        double h = 1e-5 * (1.0 + std::fabs(x));
        return (well.dV_dx(x + h) - well.dV_dx(x - h)) / (2.0 * h);
    };
    auto d3V = [&](double x) {
        if (well.d3V) return well.d3V(x);
        double h = 1e-4 * (1.0 + std::fabs(x));
        return (d2V(x + h) - d2V(x - h)) / (2.0 * h);
    };

    // d^3 (mu - V)^{5/2} / dx^3 with W = mu - V
    auto integrand = [&](double x) {
        double W = std::max(1e-300, mu - well.V(x));
        double vp = well.dV_dx(x), vpp = d2V(x), vppp = d3V(x);
        double sW = std::sqrt(W);
        double d3 = -15.0 / 8.0 * vp * vp * vp / sW + 45.0 / 4.0 * sW * vp * vpp -
                    2.5 * W * sW * vppp;
        return d3 / std::sqrt(std::max(1e-300, well.V(x) - eps));
    };
    numkit::Quadrature q(1e-11, 1e-10, 6000, numkit::EndpointMode::inv_sqrt_both);
    return numkit::integrate(integrand, x1, x2, q) / (15.0 * M_PI);
}

double balance_residual(const std::function<double(double)>& phi_tilde,
                        const std::function<double(double)>& phi_tilde_d3,
                        double E_n, const SymmetricWell& well,
                        const std::vector<double>& eps_grid, double mu_max) {
    double l1 = 0;
    const double hbar2_over_m = 1.0 / well.mass;
    for (double eps : eps_grid) {
        // the integrand is itself a quadrature; keep the outer tolerance above
        // the inner noise floor
        numkit::Quadrature q(3e-9, 1e-7, 20000, numkit::EndpointMode::inv_sqrt_left);
        // Q(mu,eps) vanishes like sqrt(mu-eps) at the lower limit; harmless mode
        double integral = numkit::integrate(
            [&](double mu) { return balance_kernel(well, mu, eps) * phi_tilde_d3(mu); },
            eps + 1e-12, mu_max, q);
        double resid = (eps - E_n) * phi_tilde(eps) - hbar2_over_m * integral;
        l1 += std::fabs(resid);
    }
    return l1 / eps_grid.size();
}

double drive_fluence(const std::function<double(double)>& alpha, double t0, double t1,
                     double omega, double mass) {
    numkit::Quadrature q(1e-10, 1e-10, 4000);
    double re = numkit::integrate(
        [&](double t) { return alpha(t) * std::cos(omega * t); }, t0, t1, q);
    double im = numkit::integrate(
        [&](double t) { return alpha(t) * std::sin(omega * t); }, t0, t1, q);
    return (re * re + im * im) / (2.0 * mass * mass);
}

double feynman_kernel(double mu, double eps, double nu) {
    // support: (sqrt(mu)-sqrt(nu))^2 < eps < (sqrt(mu)+sqrt(nu))^2, symmetric in mu,eps
    double disc = 2.0 * (mu * eps + mu * nu + eps * nu) - mu * mu - eps * eps - nu * nu;
    if (disc <= 0) return 0.0;
    return 1.0 / (M_PI * std::sqrt(disc));
}

double feynman_closed(int n, int k, double gamma) {
    if (n < 0 || k < 0) throw InvalidArgument("feynman_closed: n,k >= 0");
    if (gamma == 0.0) return (n == k) ? 1.0 : 0.0;
    // sign-definite Laguerre square; the printed product L_n^{k-n} L_k^{n-k}
    // e^{-gamma} equals this up to the (-1)^{k-n} carried by the corrected
    // oscillator distributions
    int lo = std::min(n, k), hi = std::max(n, k), j = hi - lo;
    double lag = laguerre(lo, j, gamma);
    return std::exp(-gamma) * std::pow(gamma, j) * factorial_ratio(lo, hi) * lag * lag;
}

TransitionProbability feynman_transition(int n, int k, const FeynmanDrive& drive) {
    if (n < 0 || k < 0) throw InvalidArgument("feynman_transition: n,k >= 0");
    const double g = drive.gamma();
    const double w = drive.omega;

    TransitionProbability out{0, 0};
    if (g == 0.0) {
        out.closed_form = (n == k) ? 1.0 : 0.0;
        out.double_integral = out.closed_form;
        return out;
    }
    out.closed_form = feynman_closed(n, k, g);

    // classical-ensemble double integral over the final/initial distributions
    const double nu = drive.nu;
    double eps_tail = w * (0.5 + n) + 14.0 * w;
    double mu_max = std::pow(std::sqrt(eps_tail) + std::sqrt(nu), 2) + 14.0 * w +
                    w * (0.5 + k);
    numkit::Quadrature qin(1e-12, 1e-11, 20000, numkit::EndpointMode::inv_sqrt_both);
    numkit::Quadrature qout(1e-11, 1e-9, 20000);
    out.double_integral = numkit::integrate(
        [&](double mu) {
            double e1 = std::pow(std::sqrt(mu) - std::sqrt(nu), 2);
            double e2 = std::pow(std::sqrt(mu) + std::sqrt(nu), 2);
            double inner = numkit::integrate(
                [&](double eps) { return feynman_kernel(mu, eps, nu) * ho_phi(n, w, eps); },
                e1, e2, qin);
            return ho_phi(k, w, mu) * inner;
        },
        1e-12, mu_max, qout);
    return out;
}

double semiclassical_phase(const SymmetricWell& well, double E_n, double eps) {
    if (!(eps < E_n)) throw InvalidArgument("semiclassical_phase: requires eps < E_n");
    numkit::Quadrature q(1e-10, 1e-10, 4000, numkit::EndpointMode::inv_sqrt_both);
    double I = numkit::integrate(
        [&](double e) {
            double x = well.x_of_V(e);
            double slope = well.dV_dx(x);
            return std::sqrt(2.0 * well.mass * std::max(0.0, E_n - e)) /
                   std::max(slope, 1e-300);
        },
        std::max(eps, 0.0) + 0.0, E_n, q);
    return 2.0 * I;
}

} // namespace semiclassica::classrep
