#include "semiclassica/collisions.hpp"
#include "semiclassica/ode.hpp"
#include "semiclassica/quadrature.hpp"
#include "semiclassica/root_finding.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace semiclassica::collisions {

// ---------------------------------------------------------------------------
// detachment
// ---------------------------------------------------------------------------

double NegativeIonModel::threshold() const { return std::sqrt(eps_b / d); }

double detachment_probability(double b, double E, const NegativeIonModel& model) {
    if (E <= 0 || b < 0)
        throw InvalidArgument("detachment_probability: requires E > 0, b >= 0");
    double Eth = model.threshold();
    double s = 1.0 + std::sqrt(1.0 + 4.0 * E * E * b * b);
    double W = 1.0 - Eth * Eth / (4.0 * E * E) * s * s;
    return std::clamp(W, 0.0, 1.0);
}

double detachment_cross_section(double E, const NegativeIonModel& model) {
    if (E <= 0) throw InvalidArgument("detachment_cross_section: requires E > 0");
    double Eth = model.threshold();
    if (E <= Eth) return 0.0;
    double d = E - Eth;
    return M_PI / (2.0 * Eth * Eth * E * E * E * E) * d * d *
           (E * E + 2.0 / 3.0 * E * Eth + 1.0 / 3.0 * Eth * Eth);
}

namespace {

// closest approach of the smooth trajectory: E - E b^2/R^2 - 1/R = 0
double closest_approach(double E, double b) {
    auto g = [&](double R) { return E - E * b * b / (R * R) - 1.0 / R; };
    double hi = 2.0 * (1.0 / E + b) + 1.0;
    double lo = 1e-12;
    numkit::RootOptions ro;
    ro.x_tol = 1e-14;
    return numkit::find_root(g, lo, hi, ro);
}

} // namespace

double detachment_cross_section_mc(double E, const NegativeIonModel& model,
                                   int samples, std::uint64_t seed) {
    if (E <= 0) throw InvalidArgument("detachment_cross_section_mc: requires E > 0");
    // Escape requires the cone to open at closest approach: eps R0^2 / d <= 1.
    // R0 grows with b, so the b-range is bounded by R0(b_lim) = sqrt(d/eps).
    double R_lim = std::sqrt(model.d / model.eps_b);
    if (closest_approach(E, 0.0) >= R_lim) return 0.0;
    auto r0_of_b = [&](double b) { return closest_approach(E, b); };
    double b_hi = 1.0 / E;  // find b with R0(b) = R_lim by bracketing
    while (r0_of_b(b_hi) < R_lim) b_hi *= 2;
    numkit::RootOptions ro;
    double b_lim = numkit::find_root([&](double b) { return r0_of_b(b) - R_lim; },
                                     0.0, b_hi, ro);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    long hits = 0;
    for (int i = 0; i < samples; ++i) {
        double b = b_lim * std::sqrt(uni(rng));  // area-uniform on the disc
        double R0 = closest_approach(E, b);
        double cos_m = model.eps_b * R0 * R0 / model.d;
        double u = uni(rng);  // orientation on the half-sphere: cos(theta) ~ U(0,1)
        if (u >= cos_m) ++hits;
    }
    return M_PI * b_lim * b_lim * double(hits) / samples;
}

KapitsaTrajectory kapitsa_trajectory(double E, double b, const NegativeIonModel& model,
                                     int n_samples) {
    if (E <= 0) throw InvalidArgument("kapitsa_trajectory: requires E > 0");
    double R0 = closest_approach(E, b);

    // outgoing leg from the turning point; the incoming leg is its mirror
    auto rhs = [&](double, const numkit::State& y, numkit::State& dy) {
        double R = y[0];
        dy.resize(2);
        dy[0] = y[1];
        dy[1] = 2.0 * E * b * b / (R * R * R) + 1.0 / (R * R);
    };
    double R_far = std::max(20.0 * R0, 20.0 / E);
    numkit::OdeSolver opt;
    opt.abs_tol = 1e-12;
    opt.rel_tol = 1e-11;
    auto leave = [&](double, const numkit::State& y) { return y[0] - R_far; };
    numkit::OdeResult r = numkit::integrate_ode(rhs, {R0, 0.0}, 0.0, 1e9, {leave}, opt,
                                                /*stop_at_event=*/true);

    KapitsaTrajectory out;
    out.R0 = R0;
    double t_end = r.t.back();
    for (int i = 0; i < n_samples; ++i) {
        double t = t_end * i / (n_samples - 1.0);
        // nearest stored step (the trajectory is only needed qualitatively)
        auto it = std::lower_bound(r.t.begin(), r.t.end(), t);
        size_t idx = std::min<size_t>(it - r.t.begin(), r.t.size() - 1);
        out.t.push_back(r.t[idx]);
        out.R.push_back(r.y[idx][0]);
        out.cos_theta_m.push_back(
            std::min(1.0, model.eps_b * r.y[idx][0] * r.y[idx][0] / model.d));
    }
    return out;
}

// ---------------------------------------------------------------------------
// binary encounter approximation
// ---------------------------------------------------------------------------

double BeaTarget::p_radial(double r) const {
    double v = 2.0 * (E_nl - V(r)) - L() * L() / (r * r);
    return v > 0 ? std::sqrt(v) : 0.0;
}

double BeaTarget::v_e(double r) const {
    double v = 2.0 * (E_nl - V(r));
    return v > 0 ? std::sqrt(v) : 0.0;
}

BeaTarget BeaTarget::from_potential(std::function<double(double)> V, double E_nl,
                                    int n, int l) {
    BeaTarget t;
    t.V = std::move(V);
    t.E_nl = E_nl;
    t.n = n;
    t.l = l;
    t.Z_t = 0;

    double L = t.L();
    auto g = [&](double r) { return 2.0 * (E_nl - t.V(r)) - L * L / (r * r); };
    const int N = 600;
    const double rmin = 1e-6, rmax = 1e6;
    double best = -INFINITY;
    int ibest = -1;
    std::vector<double> rs(N), gs(N);
    for (int i = 0; i < N; ++i) {
        rs[i] = rmin * std::pow(rmax / rmin, double(i) / (N - 1));
        gs[i] = g(rs[i]);
        if (gs[i] > best) { best = gs[i]; ibest = i; }
    }
    if (best <= 0) throw NoBoundRegion("BeaTarget: no classically allowed region");
    int i = ibest;
    while (i > 0 && gs[i - 1] > 0) --i;
    if (i == 0) throw NoBoundRegion("BeaTarget: inner turning point not found");
    numkit::RootOptions ro;
    t.r1 = numkit::find_root(g, rs[i - 1], rs[i], ro);
    i = ibest;
    while (i + 1 < N && gs[i + 1] > 0) ++i;
    if (i + 1 >= N) throw NoBoundRegion("BeaTarget: state unbound");
    t.r2 = numkit::find_root(g, rs[i], rs[i + 1], ro);

    numkit::Quadrature q(1e-11, 1e-11, 6000, numkit::EndpointMode::inv_sqrt_both);
    t.T_nl = 2.0 * numkit::integrate([&](double r) { return 1.0 / t.p_radial(r); },
                                     t.r1, t.r2, q);
    t.V_mean = 2.0 / t.T_nl *
               numkit::integrate([&](double r) { return t.V(r) / t.p_radial(r); },
                                 t.r1, t.r2, q);
    return t;
}

BeaTarget BeaTarget::hydrogenic(double Z, int n, int l) {
    if (Z <= 0 || n < 1 || l < 0 || l > n - 1)
        throw InvalidArgument("BeaTarget::hydrogenic: invalid (Z, n, l)");
    BeaTarget t = from_potential([Z](double r) { return -Z / r; },
                                 -Z * Z / (2.0 * n * n), n, l);
    t.Z_t = Z;
    return t;
}

double bea_sigma_differential(double v_p, double v_e, double cos_theta, double eps) {
    if (eps <= 0) throw InvalidArgument("bea_sigma_differential: eps > 0 required");
    if (v_p * v_p < 2.0 * eps) return 0.0;
    double v2 = v_p * v_p + v_e * v_e - 2.0 * v_p * v_e * cos_theta;
    if (v2 <= 0) return 0.0;
    double vp2f = v_p * v_p - 2.0 * eps;       // final projectile speed^2
    double ve2f = v_e * v_e + 2.0 * eps;       // final electron speed^2
    double num = vp2f * ve2f - v_p * v_p * v_e * v_e * cos_theta * cos_theta;
    if (num <= 0) return 0.0;
    return M_PI * num / (v2 * v2 * eps * eps);
}

double bea_sigma_velocity(double v_p, double v_e, double eps) {
    if (eps <= 0) throw InvalidArgument("bea_sigma_velocity: eps > 0 required");
    if (v_p <= 0 || v_e < 0) throw InvalidArgument("bea_sigma_velocity: bad speeds");
    if (v_p * v_p < 2.0 * eps) return 0.0;  // transfer kinematically forbidden
    double vpf = std::sqrt(v_p * v_p - 2.0 * eps);
    double vef = std::sqrt(v_e * v_e + 2.0 * eps);
    double pref = M_PI / (8.0 * eps * eps);
    double S2 = v_p * v_p + v_e * v_e;
    double val;
    if (v_p >= vef) {
        double x = v_e / v_p;
        double lg = 2.0 * (std::log1p(x) - std::log1p(-x));  // ln[(vp+ve)^2/(vp-ve)^2]
        double D = v_p * v_p - v_e * v_e;
        double X = vpf * vpf - vef * vef;
        val = S2 / (v_p * v_e) * lg - 2.0 * X * X / (D * D) - 2.0;
    } else {
        double G = vpf * vef;
        val = S2 / G * std::log((S2 + 2.0 * G) / (S2 - 2.0 * G)) - 4.0;
    }
    // the derivation assumes the transfer is attainable; clamp the forbidden corner
    return std::max(0.0, pref * val);
}

double bea_sigma_velocity_deps(double v_p, double v_e, double eps) {
    if (eps <= 0) throw InvalidArgument("bea_sigma_velocity_deps: eps > 0 required");
    if (v_p * v_p < 2.0 * eps) return 0.0;
    double vpf2 = v_p * v_p - 2.0 * eps;
    double vef2 = v_e * v_e + 2.0 * eps;
    double S2 = v_p * v_p + v_e * v_e;
    double X = vpf2 - vef2;
    double pref = M_PI / 8.0;
    double e2 = eps * eps, e3 = e2 * eps;
    if (v_p >= std::sqrt(vef2)) {
        double x = v_e / v_p;
        double lg = 2.0 * (std::log1p(x) - std::log1p(-x));
        double D = v_p * v_p - v_e * v_e;
        double bracket = S2 / (v_p * v_e) * lg - 2.0 * X * X / (D * D) - 2.0;
        if (bracket <= 0) return 0.0;  // clamped region
        return pref * (-2.0 * bracket / e3 + 16.0 * X / (D * D) / e2);
    }
    double G = std::sqrt(vpf2) * std::sqrt(vef2);
    double lnC = std::log((S2 + 2.0 * G) / (S2 - 2.0 * G));
    double B = S2 / G;
    double bracket = B * lnC - 4.0;
    if (bracket <= 0) return 0.0;
    double Gp = X / G;  // d(vpf*vef)/d eps
    double Bp = -S2 * Gp / (G * G);
    double lnCp = 4.0 * S2 * Gp / (S2 * S2 - 4.0 * G * G);
    return pref * (-2.0 * bracket / e3 + (Bp * lnC + B * lnCp) / e2);
}

double bea_cross_section(const BeaTarget& target, double v_p, double eps) {
    if (eps <= 0) throw InvalidArgument("bea_cross_section: eps > 0 required");
    if (target.T_nl <= 0) throw NoBoundRegion("bea_cross_section: invalid target");
    numkit::Quadrature q(1e-10, 1e-8, 6000, numkit::EndpointMode::inv_sqrt_both);
    double I = numkit::integrate(
        [&](double r) {
            return bea_sigma_velocity(v_p, target.v_e(r), eps) / target.p_radial(r);
        },
        target.r1, target.r2, q);
    return 2.0 / target.T_nl * I;
}

double bea_ionization(const BeaTarget& target, double v_p) {
    return bea_cross_section(target, v_p, std::fabs(target.E_nl));
}

double bea_asymptote(const BeaTarget& target, double v_p, double eps, double Z_p) {
    if (eps <= 0 || v_p <= 0) throw InvalidArgument("bea_asymptote: bad arguments");
    return 2.0 * M_PI * Z_p * Z_p / (3.0 * v_p * v_p * eps * eps) *
           (3.0 * eps + 2.0 * (target.E_nl - target.V_mean));
}

double bea_excitation_n(const BeaTarget& initial, const BeaTarget& final_state,
                        double v_p) {
    double eps = final_state.E_nl - initial.E_nl;
    if (eps <= 0) throw NotBound("bea_excitation_n: requires E_n' > E_nl");
    if (final_state.E_nl >= 0) throw NotBound("bea_excitation_n: final state unbound");
    numkit::Quadrature q(1e-12, 1e-8, 6000, numkit::EndpointMode::inv_sqrt_both);
    double I = numkit::integrate(
        [&](double r) {
            return bea_sigma_velocity_deps(v_p, initial.v_e(r), eps) /
                   initial.p_radial(r);
        },
        initial.r1, initial.r2, q);
    return 4.0 * M_PI / (final_state.T_nl * initial.T_nl) * std::fabs(I);
}

double bea_excitation_n(const BeaTarget& initial, double v_p, int n_prime) {
    if (initial.Z_t <= 0)
        throw InvalidArgument("bea_excitation_n: target is not hydrogenic; "
                              "pass the final state explicitly");
    int l_final = std::min(initial.l, n_prime - 1);
    return bea_excitation_n(initial,
                            BeaTarget::hydrogenic(initial.Z_t, n_prime, l_final), v_p);
}

double lprime_distribution(double r, double dp_perp, double L, double Lprime) {
    if (r <= 0 || dp_perp <= 0 || L < 0)
        throw InvalidArgument("lprime_distribution: bad arguments");
    double mu1 = (Lprime - L) / r, mu2 = (Lprime + L) / r;
    double dp2 = dp_perp * dp_perp;
    double num = (mu2 * mu2 - dp2) * (dp2 - mu1 * mu1);
    if (num <= 0) return 0.0;
    return 2.0 * Lprime / (M_PI * r * r * std::sqrt(num));
}

namespace {

// time-uniform sampling of the Coulomb radial motion via the Kepler equation
double sample_kepler_radius(double a, double e, double M) {
    double xi = M;  // Newton on xi - e sin xi = M
    for (int i = 0; i < 50; ++i) {
        double f = xi - e * std::sin(xi) - M;
        double fp = 1.0 - e * std::cos(xi);
        double step = f / fp;
        xi -= step;
        if (std::fabs(step) < 1e-14) break;
    }
    return a * (1.0 - e * std::cos(xi));
}

} // namespace

double bea_excitation_nl(const BeaTarget& initial, double v_p, int n_prime, int l_prime,
                         const ExcitationNlOptions& opt) {
    if (initial.Z_t <= 0)
        throw InvalidArgument("bea_excitation_nl: implemented for hydrogenic targets");
    if (n_prime < 1 || l_prime < 0 || l_prime > n_prime - 1)
        throw InvalidArgument("bea_excitation_nl: invalid final quantum numbers");
    const double Z = initial.Z_t;
    const int n = initial.n;
    const double L = initial.L();
    const double a = n * n / Z;
    const double e = std::sqrt(std::max(0.0, 1.0 - L * L / (double(n) * n)));

    // impact-parameter band: large enough that the weakest counted kick cannot
    // reach the target bin beyond it
    double v_e_max = std::sqrt(2.0 * (initial.E_nl + Z / initial.r1));
    double dE_min = 0.5 * Z * Z / double(n) / n / n;  // half a level spacing
    double dn_gap = std::abs(n_prime - n) - 0.5;
    if (dn_gap > 0) dE_min *= 2.0 * dn_gap;
    double v_rel_min = std::max(v_p - v_e_max, 0.2 * v_p);
    double b_max = opt.b_max_factor * 2.0 * std::max(v_e_max, 1e-3) /
                   (v_rel_min * dE_min);
    double b_min = 1e-4 * 2.0 / (v_p * v_p);  // deep Rutherford core
    double lnspan = std::log(b_max / b_min);

    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    // narrow windows around the final cell centre; the per-cell density is
    // recovered by dividing out the window areas
    const double hn = opt.window_n, hl = opt.window_l;
    const double e_lo = -Z * Z / (2.0 * (n_prime - hn) * (n_prime - hn));
    const double e_hi = -Z * Z / (2.0 * (n_prime + hn) * (n_prime + hn));
    const double Lp_centre = l_prime + 0.5;
    const double L_lo = Lp_centre - hl, L_hi = Lp_centre + hl;
    const double window_norm = (2.0 * hn) * (2.0 * hl);

    double acc = 0;
    for (int s = 0; s < opt.samples; ++s) {
        // microcanonical phase point on the (E, L) shell
        double r = sample_kepler_radius(a, e, 2.0 * M_PI * uni(rng));
        double p2 = 2.0 * (initial.E_nl + Z / r);
        if (p2 <= 0) continue;
        double pr2 = p2 - L * L / (r * r);
        double pr = pr2 > 0 ? std::sqrt(pr2) * (uni(rng) < 0.5 ? 1 : -1) : 0.0;
        double pt = L / r;

        // random orientation of the position; electron momentum in the local frame
        double cth = 2.0 * uni(rng) - 1.0, sth = std::sqrt(1.0 - cth * cth);
        double ph = 2.0 * M_PI * uni(rng);
        double rhat[3] = {sth * std::cos(ph), sth * std::sin(ph), cth};
        // transverse unit vector with a random azimuth around rhat
        double aux[3] = {0, 0, 1};
        if (std::fabs(rhat[2]) > 0.9) { aux[0] = 1; aux[2] = 0; }
        double t1[3] = {rhat[1] * aux[2] - rhat[2] * aux[1],
                        rhat[2] * aux[0] - rhat[0] * aux[2],
                        rhat[0] * aux[1] - rhat[1] * aux[0]};
        double t1n = std::sqrt(t1[0] * t1[0] + t1[1] * t1[1] + t1[2] * t1[2]);
        for (double& c : t1) c /= t1n;
        double t2[3] = {rhat[1] * t1[2] - rhat[2] * t1[1],
                        rhat[2] * t1[0] - rhat[0] * t1[2],
                        rhat[0] * t1[1] - rhat[1] * t1[0]};
        double psi = 2.0 * M_PI * uni(rng);
        double that[3];
        for (int i = 0; i < 3; ++i) that[i] = std::cos(psi) * t1[i] + std::sin(psi) * t2[i];

        double pe[3];
        for (int i = 0; i < 3; ++i) pe[i] = pr * rhat[i] + pt * that[i];

        // relative velocity and the impact-parameter direction in its normal plane
        double v[3] = {-pe[0], -pe[1], v_p - pe[2]};
        double vmag = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        if (vmag <= 0) continue;

        double bdir1[3], bdir2[3];
        {
            double ax[3] = {1, 0, 0};
            if (std::fabs(v[0]) > 0.9 * vmag) { ax[0] = 0; ax[1] = 1; }
            bdir1[0] = v[1] * ax[2] - v[2] * ax[1];
            bdir1[1] = v[2] * ax[0] - v[0] * ax[2];
            bdir1[2] = v[0] * ax[1] - v[1] * ax[0];
            double nn = std::sqrt(bdir1[0] * bdir1[0] + bdir1[1] * bdir1[1] +
                                  bdir1[2] * bdir1[2]);
            for (double& c : bdir1) c /= nn;
            bdir2[0] = (v[1] * bdir1[2] - v[2] * bdir1[1]) / vmag;
            bdir2[1] = (v[2] * bdir1[0] - v[0] * bdir1[2]) / vmag;
            bdir2[2] = (v[0] * bdir1[1] - v[1] * bdir1[0]) / vmag;
        }
        double chi = 2.0 * M_PI * uni(rng);
        double b = b_min * std::exp(lnspan * uni(rng));  // log-uniform importance
        double weight = 2.0 * M_PI * b * b * lnspan;     // d sigma = 2 pi b db

        // velocity kick of the bound electron (exact two-body Coulomb result;
        // the +2v term is fixed by elasticity: a head-on equal-mass collision
        // exchanges the velocities, dv = +v at b = 0)
        double v3 = vmag * vmag * vmag;
        double denom = v3 * vmag * b * b + 4.0;
        double bvec[3];
        for (int i = 0; i < 3; ++i)
            bvec[i] = std::cos(chi) * bdir1[i] + std::sin(chi) * bdir2[i];
        double dv[3];
        for (int i = 0; i < 3; ++i)
            dv[i] = 2.0 * (v3 * b * bvec[i] + 2.0 * v[i]) / denom;

        double pef[3] = {pe[0] + dv[0], pe[1] + dv[1], pe[2] + dv[2]};
        double Ef = 0.5 * (pef[0] * pef[0] + pef[1] * pef[1] + pef[2] * pef[2]) - Z / r;
        if (Ef < e_lo || Ef > e_hi) continue;

        double rvec[3] = {r * rhat[0], r * rhat[1], r * rhat[2]};
        double Lf[3] = {rvec[1] * pef[2] - rvec[2] * pef[1],
                        rvec[2] * pef[0] - rvec[0] * pef[2],
                        rvec[0] * pef[1] - rvec[1] * pef[0]};
        double Lfm = std::sqrt(Lf[0] * Lf[0] + Lf[1] * Lf[1] + Lf[2] * Lf[2]);
        if (Lfm < L_lo || Lfm >= L_hi) continue;

        acc += weight;
    }
    return acc / opt.samples / window_norm;
}

double bea_excitation_nl_asymptotic(int n, int l, int n_prime, int l_prime, double v_p) {
    double L = l + 0.5, Lp = l_prime + 0.5;
    double dn = n_prime - n, dL = Lp - L;
    double denom = n * dn * dn + n * dL * dL - 2.0 * L * dn * dL;
    if (denom == 0)
        throw InvalidArgument("bea_excitation_nl_asymptotic: degenerate transition");
    double n2L2 = double(n) * n - L * L;
    return 32.0 * std::pow(double(n), 3) * std::pow(n2L2, 1.5) /
           (9.0 * M_PI * v_p * v_p * denom * denom);
}

} // namespace semiclassica::collisions
