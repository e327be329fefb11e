#include "semiclassica/helium_collinear.hpp"
#include "semiclassica/ode.hpp"

#include <cmath>

namespace semiclassica::collinear {

namespace {

// Regularized chart: r2 = Q^2, p2 = P/(2Q), fictitious time ds = dt/r2.
// The flow is generated by Gamma = Q^2 (H - E)
//   = P^2/8 - 2 + Q^2 [p1^2/2 - 2/r1 - E] + Q^2/(r1 - Q^2),
// which is analytic through the inner-electron collision Q = 0.
// State vector: (r1, p1, Q, P, t).

struct RegRhs {
    double E;
    void operator()(double, const numkit::State& y, numkit::State& dy) const {
        const double r1 = y[0], p1 = y[1], Q = y[2], P = y[3];
        const double Q2 = Q * Q;
        const double gap = r1 - Q2;
        if (gap <= 0)
            throw OrderingViolation("collinear: electron ordering r1 > r2 violated");
        if (r1 <= 1e-10)
            throw TripleCollision("collinear: both electrons at the nucleus");
        const double A = 0.5 * p1 * p1 - 2.0 / r1 - E;
        dy.resize(5);
        dy[0] = Q2 * p1;
        dy[1] = Q2 * (-2.0 / (r1 * r1) + 1.0 / (gap * gap));
        dy[2] = P / 4.0;
        dy[3] = -2.0 * Q * A - 2.0 * Q * r1 / (gap * gap);
        dy[4] = Q2;
    }
};

struct RegRun {
    std::vector<SectionPoint> points;
    double max_energy_drift = 0;
    numkit::State final_state;
};

// integrate until n_crossings zeros of Q, starting from a regularized state
RegRun run_regularized(numkit::State y, double E, int n_crossings, double r1_escape) {
    RegRhs rhs{E};
    auto section = [](double, const numkit::State& s) { return s[2]; };

    numkit::OdeSolver opt;
    opt.abs_tol = 1e-13;
    opt.rel_tol = 1e-12;
    opt.event_tol = 1e-13;

    RegRun out;
    double s_now = 0;
    const double chunk = 400.0;  // generous fictitious-time horizon per crossing
    int found = 0, idle_chunks = 0;
    while (found < n_crossings) {
        numkit::OdeResult r = numkit::integrate_ode(
            [&](double s, const numkit::State& yy, numkit::State& dy) { rhs(s, yy, dy); },
            y, s_now, s_now + chunk, {section}, opt, /*stop_at_event=*/true);

        // track how far H drifts from E away from the collision, where H is finite
        for (const auto& st : r.y) {
            const double r1 = st[0], p1 = st[1], Q = st[2], P = st[3];
            const double r2 = Q * Q;
            if (r2 > 1e-3 * r1) {
                double p2 = P / (2.0 * Q);
                double H = 0.5 * p1 * p1 + 0.5 * p2 * p2 - 2.0 / r1 - 2.0 / r2 +
                           1.0 / (r1 - r2);
                out.max_energy_drift = std::max(out.max_energy_drift, std::fabs(H - E));
            }
            if (st[0] > r1_escape)
                throw Escape("collinear: outer electron escaped");
        }

        if (!r.events.empty()) {
            const auto& ev = r.events.front();
            out.points.push_back({ev.y[0], ev.y[1], ++found, ev.y[4]});
            y = ev.y;
            // restart exactly on the section (re-arms the event) and on the
            // energy shell: Gamma = 0 at Q = 0 fixes |P| = 4, so projecting P
            // stops integration error from accumulating across crossings
            y[2] = 0.0;
            y[3] = y[3] >= 0 ? 4.0 : -4.0;
            s_now = ev.t;
            idle_chunks = 0;
        } else {
            y = r.y.back();
            s_now = r.t.back();
            if (++idle_chunks > 50)
                throw Escape("collinear: no further section crossings found");
        }
    }
    out.final_state = y;
    return out;
}

numkit::State section_start(double r1, double p1) {
    // On the section Gamma = 0 fixes P = 4 (outgoing collision) for any (r1, p1).
    return {r1, p1, 0.0, 4.0, 0.0};
}

} // namespace

double CollinearState::energy() const {
    return 0.5 * p1 * p1 + 0.5 * p2 * p2 - 2.0 / r1 - 2.0 / r2 + 1.0 / (r1 - r2);
}

std::vector<SectionPoint> integrate_collinear(const CollinearState& s0, int n_crossings) {
    if (!(s0.r1 > s0.r2) || s0.r2 <= 0)
        throw InvalidArgument("integrate_collinear: requires r1 > r2 > 0 "
                              "(launch from the section with section_map)");
    double E = s0.energy();
    if (E >= 0) throw InvalidArgument("integrate_collinear: requires E < 0");
    double Q = std::sqrt(s0.r2);
    numkit::State y = {s0.r1, s0.p1, Q, 2.0 * Q * s0.p2, 0.0};
    return run_regularized(y, E, n_crossings, 400.0 / -E).points;
}

std::array<double, 2> section_map(double E, double r1, double p1, int iterations) {
    if (E >= 0) throw InvalidArgument("section_map: requires E < 0");
    RegRun run = run_regularized(section_start(r1, p1), E, iterations, 400.0 / -E);
    return {run.points.back().r1, run.points.back().p1};
}

SectionRun section_run(double E, double r1, double p1, int n_crossings) {
    if (E >= 0) throw InvalidArgument("section_run: requires E < 0");
    RegRun run = run_regularized(section_start(r1, p1), E, n_crossings, 400.0 / -E);
    return {std::move(run.points), run.max_energy_drift};
}

double frozen_planet_energy(const FrozenPlanetQN& qn) {
    if (qn.s < 0 || qn.k < 0 || qn.l < 0)
        throw InvalidArgument("frozen_planet_energy: quantum numbers must be >= 0");
    double denom = qn.s + 0.5 + 2.0 * (qn.k + 0.5) * FrozenPlanetQN::gamma1 +
                   (qn.l + 0.5) * FrozenPlanetQN::gamma2;
    return -FrozenPlanetQN::S_sc * FrozenPlanetQN::S_sc / (denom * denom);
}

FixedPoint locate_fixed_point(double E, double r1_guess, double p1_guess) {
    double x[2] = {r1_guess, p1_guess};
    const double h[2] = {1e-6 * (1 + std::fabs(r1_guess)), 1e-6};

    auto map1 = [&](double r1, double p1) { return section_map(E, r1, p1, 1); };

    double J[4] = {0, 0, 0, 0};
    double res = INFINITY;
    for (int iter = 0; iter < 60; ++iter) {
        auto m0 = map1(x[0], x[1]);
        double F[2] = {m0[0] - x[0], m0[1] - x[1]};
        res = std::hypot(F[0], F[1]);
        if (res < 1e-9) break;

        auto mr = map1(x[0] + h[0], x[1]);
        auto ml = map1(x[0] - h[0], x[1]);
        auto mu = map1(x[0], x[1] + h[1]);
        auto md = map1(x[0], x[1] - h[1]);
        J[0] = (mr[0] - ml[0]) / (2 * h[0]);
        J[1] = (mu[0] - md[0]) / (2 * h[1]);
        J[2] = (mr[1] - ml[1]) / (2 * h[0]);
        J[3] = (mu[1] - md[1]) / (2 * h[1]);

        // Newton on map(x) - x with damping
        double A[4] = {J[0] - 1, J[1], J[2], J[3] - 1};
        double det = A[0] * A[3] - A[1] * A[2];
        if (std::fabs(det) < 1e-14)
            throw NotConverged("locate_fixed_point: singular Newton system");
        double dx0 = (-F[0] * A[3] + F[1] * A[1]) / det;
        double dx1 = (-A[0] * F[1] + A[2] * F[0]) / det;
        double cap = 0.5 * (1 + std::fabs(x[0]));
        double len = std::hypot(dx0, dx1);
        if (len > cap) { dx0 *= cap / len; dx1 *= cap / len; }
        x[0] += dx0;
        x[1] += dx1;
    }
    if (!(res < 1e-8))
        throw NotConverged("locate_fixed_point: residual did not converge");

    double tr = J[0] + J[3];
    double det = J[0] * J[3] - J[1] * J[2];
    if (std::fabs(tr) > 2.0 + 1e-3)
        throw HyperbolicDetected("locate_fixed_point: linearization is hyperbolic");

    FixedPoint fp;
    fp.r1 = x[0];
    fp.p1 = x[1];
    fp.residual = res;
    fp.jacobian = {J[0], J[1], J[2], J[3]};
    fp.jacobian_det = det;
    // complex pair on the unit circle for an elliptic point: |lambda| = sqrt(det)
    fp.eigenvalue_modulus = std::sqrt(std::fabs(det));
    return fp;
}

} // namespace semiclassica::collinear
