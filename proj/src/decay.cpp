#include "semiclassica/decay.hpp"
#include "semiclassica/ode.hpp"
#include "semiclassica/units.hpp"

#include <cmath>

namespace semiclassica::decay {

namespace {
// printed-table prefactor; the exact (3/2)c^3 * time_au_s is 9.34e-11
const double kLifetimePrefactorSeconds = 9.32e-11;
}

void loss_rates(const DecayState& s, double& dE_dt, double& dL_dt) {
    const double c3 = units::c_au * units::c_au * units::c_au;
    double k = std::pow(-2.0 * s.E, 1.5);
    double L2 = s.L * s.L;
    // orbit-averaged bremsstrahlung losses; dE/dt carries L^5 (the Larmor
    // average of 1/r^4), which reduces to -(2/3c^3)(-2E)^4 on circular orbits
    dE_dt = -k * (3.0 + 2.0 * s.E * L2) / (3.0 * c3 * L2 * L2 * s.L);
    dL_dt = -2.0 * k / (3.0 * c3 * L2);
}

double lifetime_classical_au(int n, int l) {
    if (n < 2 || l < 1 || l > n - 1)
        throw InvalidQN("lifetime_classical: requires n >= 2 and 1 <= l <= n-1");
    const double c3 = units::c_au * units::c_au * units::c_au;
    double Lh = l + 0.5;
    return 1.5 * c3 * double(n) * n * n * Lh * Lh;
}

double lifetime_classical(int n, int l) {
    if (n < 2 || l < 1 || l > n - 1)
        throw InvalidQN("lifetime_classical: requires n >= 2 and 1 <= l <= n-1");
    double Lh = l + 0.5;
    return kLifetimePrefactorSeconds * double(n) * n * n * Lh * Lh;
}

DecayTrajectory integrate_decay(const DecayState& start, double delta_L) {
    if (start.E >= 0 || start.L <= 0)
        throw InvalidArgument("integrate_decay: start must be bound with L > 0");
    if (delta_L <= 0)
        throw InvalidArgument("integrate_decay: delta_L must be positive");
    const double L_target = start.L - delta_L;
    if (L_target <= 0)
        throw Collapse("integrate_decay: L would reach zero before the target");

    auto rhs = [](double, const numkit::State& y, numkit::State& dydt) {
        DecayState s{y[0], y[1]};
        dydt.resize(2);
        loss_rates(s, dydt[0], dydt[1]);
    };
    auto hit = [&](double, const numkit::State& y) { return y[1] - L_target; };

    // a generous horizon: several frozen-coefficient lifetimes
    double dE0, dL0;
    loss_rates(start, dE0, dL0);
    double horizon = 10.0 * delta_L / std::fabs(dL0);

    numkit::OdeSolver opt;
    opt.abs_tol = 1e-12;
    opt.rel_tol = 1e-10;
    opt.initial_step = 1e-5 * horizon;
    numkit::OdeResult r = numkit::integrate_ode(rhs, {start.E, start.L}, 0.0, horizon,
                                                {hit}, opt, /*stop_at_event=*/true);
    if (r.events.empty())
        throw Collapse("integrate_decay: target not reached (orbit circularised?)");

    DecayTrajectory out;
    out.elapsed = r.events.front().t;
    out.t = r.t;
    out.states.reserve(r.y.size());
    for (const auto& y : r.y) out.states.push_back({y[0], y[1]});
    return out;
}

} // namespace semiclassica::decay
