#include "semiclassica/crossed_fields.hpp"
#include "semiclassica/ode.hpp"
#include "semiclassica/units.hpp"

#include <cmath>
#include <random>

namespace semiclassica::fields {

namespace {
const double kC = units::c_au;
}

void FieldConfig::validate() const {
    if (n < 1) throw InvalidArgument("FieldConfig: n >= 1 required");
    double jj = j();
    auto check = [&](double p, const char* name) {
        if (std::fabs(p) > jj + 1e-12)
            throw InvalidProjection(std::string("FieldConfig: |") + name + "| exceeds j");
        double steps = jj - p;  // must be a whole number of unit steps from +j
        if (std::fabs(steps - std::round(steps)) > 1e-9)
            throw InvalidProjection(std::string("FieldConfig: ") + name +
                                    " not reachable from j in unit steps");
    };
    check(n1, "n1");
    check(n2, "n2");

    // first-order spread must stay well inside the manifold gap
    double spread = 2.0 * j() * (pseudo_spin_frequencies(*this).omega1 +
                                 pseudo_spin_frequencies(*this).omega2);
    double gap = 0.5 * (1.0 / (n * n) - 1.0 / ((n + 1.0) * (n + 1.0)));
    if (spread > 0.5 * gap)
        throw InvalidArgument("FieldConfig: fields too strong, adjacent n-manifolds overlap");
}

Vec3 effective_field(const Vec3& P, const Vec3& B, double M) {
    if (M <= 0) throw InvalidArgument("effective_field: M > 0 required");
    return cross(P, B) / (M * kC);
}

PseudoSpinFrequencies pseudo_spin_frequencies(const FieldConfig& cfg) {
    if (cfg.n < 1) throw InvalidArgument("pseudo_spin_frequencies: n >= 1 required");
    Vec3 scaled = 3.0 * kC * double(cfg.n) * cfg.F;
    PseudoSpinFrequencies out;
    out.Btilde1 = cfg.B + scaled;
    out.Btilde2 = cfg.B - scaled;
    out.omega1 = norm(out.Btilde1) / (2.0 * kC);
    out.omega2 = norm(out.Btilde2) / (2.0 * kC);
    return out;
}

double first_order_energy(const FieldConfig& cfg) {
    PseudoSpinFrequencies f = pseudo_spin_frequencies(cfg);
    return f.omega1 * cfg.n1 + f.omega2 * cfg.n2;
}

void pseudo_spin_rhs(const FieldConfig& cfg, const Vec3& J1, const Vec3& J2,
                     Vec3& dJ1, Vec3& dJ2) {
    PseudoSpinFrequencies f = pseudo_spin_frequencies(cfg);
    dJ1 = cross(f.Btilde1, J1) / (2.0 * kC);
    dJ2 = cross(f.Btilde2, J2) / (2.0 * kC);
}

namespace {

Vec3 axis_or_default(const Vec3& v) {
    double m = norm(v);
    return m > 1e-300 ? v / m : Vec3{0, 0, 1};
}

// pseudo-spin with the given projection onto `axis` and seeded azimuth
Vec3 place_spin(const Vec3& axis, double magnitude, double projection, double azimuth) {
    Vec3 e3 = axis_or_default(axis);
    Vec3 e1 = any_perpendicular(e3);
    Vec3 e2 = cross(e3, e1);
    double trans2 = magnitude * magnitude - projection * projection;
    double trans = trans2 > 0 ? std::sqrt(trans2) : 0.0;
    return projection * e3 + trans * (std::cos(azimuth) * e1 + std::sin(azimuth) * e2);
}

} // namespace

QuantizedState quantized_initial_conditions(const FieldConfig& cfg,
                                            std::uint64_t phase_seed) {
    cfg.validate();
    const double n = cfg.n;

    std::mt19937_64 rng(phase_seed);
    std::uniform_real_distribution<double> uni(0.0, 2.0 * M_PI);
    double phi1 = uni(rng), phi2 = uni(rng), xi0 = uni(rng);

    PseudoSpinFrequencies f = pseudo_spin_frequencies(cfg);
    Vec3 J1 = place_spin(f.Btilde1, 0.5 * n, cfg.n1, phi1);
    Vec3 J2;
    if (cfg.n == 1) {
        J2 = -J1;  // single-state manifold: L = 0, straight-line orbit
    } else {
        J2 = place_spin(f.Btilde2, 0.5 * n, cfg.n2, phi2);
    }

    Vec3 L = J1 + J2;
    Vec3 A = (J1 - J2) / n;
    double e = norm(A);
    if (e > 1.0) e = 1.0;  // roundoff guard

    // orbit basis: perihelion opposite A (A points to the aphelion side)
    Vec3 Phat = e > 1e-12 ? -normalized(A) : any_perpendicular(axis_or_default(L));
    Vec3 Lhat;
    if (norm(L) > 1e-12) {
        Lhat = normalized(L);
    } else {
        Lhat = any_perpendicular(Phat);  // degenerate line orbit
    }
    Vec3 Qhat = cross(Lhat, Phat);

    // keep the sampled anomaly away from the collision of near-line orbits
    if (e > 1.0 - 1e-6) xi0 = 2.0 * M_PI / 3.0 + xi0 / (2.0 * M_PI) * (2.0 * M_PI / 3.0);

    const double a = n * n;
    double se = std::sqrt(std::max(0.0, 1.0 - e * e));
    Vec3 r = a * ((std::cos(xi0) - e) * Phat + se * std::sin(xi0) * Qhat);
    double denom = n * (1.0 - e * std::cos(xi0));
    Vec3 v = (-std::sin(xi0) * Phat + se * std::cos(xi0) * Qhat) / denom;

    QuantizedState st;
    st.element = {L, A, n, xi0, n * n * n * (xi0 - e * std::sin(xi0))};
    st.r = r;
    st.v = v;
    st.J1 = J1;
    st.J2 = J2;
    return st;
}

namespace {

struct RampEval {
    Ramp kind;
    double rate;
    // lambda(t) and its time derivative; the ramp ends at u = rate * t = 1
    void eval(double t, double& lambda, double& lambda_dot) const {
        double u = rate * t;
        if (u >= 1.0) { lambda = 1.0; lambda_dot = 0.0; return; }
        if (u <= 0.0) { lambda = 0.0; lambda_dot = (kind == Ramp::linear) ? rate : 0.0; return; }
        if (kind == Ramp::linear) {
            lambda = u;
            lambda_dot = rate;
        } else {
            lambda = u * u * (3.0 - 2.0 * u);
            lambda_dot = rate * 6.0 * u * (1.0 - u);
        }
    }
};

} // namespace

SwitchingRun adiabatic_switch(const FieldConfig& cfg, const QuantizedState& init,
                              const SwitchingParams& run) {
    cfg.validate();
    if (run.rate <= 0) throw InvalidArgument("adiabatic_switch: rate > 0 required");
    const double r_ion = run.r_ion_factor * cfg.n * cfg.n;
    const double t_end = 1.0 / run.rate;
    RampEval ramp{run.ramp, run.rate};

    // regularized time ds = dt / r smooths perihelion passages of eccentric orbits
    auto rhs = [&](double, const numkit::State& y, numkit::State& dy) {
        Vec3 r{y[0], y[1], y[2]}, v{y[3], y[4], y[5]};
        double t = y[6];
        double rn = norm(r);
        double lambda, lambda_dot;
        ramp.eval(t, lambda, lambda_dot);
        Vec3 acc = -r / (rn * rn * rn) - lambda * (cfg.F + cross(v, cfg.B) / kC);
        if (run.include_gauge_force)
            acc += (lambda_dot / (2.0 * kC)) * cross(cfg.B, r);
        dy.assign(7, 0.0);
        dy[0] = rn * v.x; dy[1] = rn * v.y; dy[2] = rn * v.z;
        dy[3] = rn * acc.x; dy[4] = rn * acc.y; dy[5] = rn * acc.z;
        dy[6] = rn;
    };

    auto done = [&](double, const numkit::State& y) { return y[6] - t_end; };
    auto ion = [&](double, const numkit::State& y) {
        return std::hypot(y[0], y[1], y[2]) - r_ion;
    };

    numkit::State y0 = {init.r.x, init.r.y, init.r.z,
                        init.v.x, init.v.y, init.v.z, 0.0};
    numkit::OdeSolver opt;
    opt.abs_tol = run.abs_tol;
    opt.rel_tol = run.rel_tol;

    // fictitious-time horizon: <1/r> along a bound orbit is ~1/a
    double s_end = 4.0 * t_end / (cfg.n * cfg.n) + 1e3;
    numkit::OdeResult res = numkit::integrate_ode(rhs, y0, 0.0, s_end, {done, ion}, opt,
                                                  /*stop_at_event=*/true);

    SwitchingRun out;
    auto record = [&](double, const numkit::State& y) {
        Vec3 r{y[0], y[1], y[2]}, v{y[3], y[4], y[5]};
        double t = y[6], lambda, ld;
        ramp.eval(t, lambda, ld);
        double E = 0.5 * dot(v, v) - 1.0 / norm(r) + lambda * dot(cfg.F, r);
        out.samples.push_back({t, lambda, r, v, E});
    };
    size_t stride = std::max<size_t>(1, res.y.size() / run.max_samples);
    for (size_t i = 0; i < res.y.size(); i += stride) record(res.t[i], res.y[i]);
    if ((res.y.size() - 1) % stride != 0) record(res.t.back(), res.y.back());

    if (!res.events.empty() && res.events.front().index == 1) {
        out.ionized = true;
        double lambda, ld;
        ramp.eval(res.events.front().y[6], lambda, ld);
        out.lambda_at_ionization = lambda;
    } else if (res.events.empty()) {
        throw NonConvergent("adiabatic_switch: ramp end not reached "
                            "(fictitious-time horizon too small)");
    }
    out.final_energy = out.samples.back().energy;
    return out;
}

} // namespace semiclassica::fields
