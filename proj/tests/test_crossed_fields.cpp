#include "doctest.h"

#include "semiclassica/crossed_fields.hpp"
#include "semiclassica/ode.hpp"
#include "semiclassica/units.hpp"

#include <cmath>
#include <vector>

using namespace semiclassica;
using namespace semiclassica::fields;

namespace {
const double kC = units::c_au;

FieldConfig crossed_config(int n, double n1, double n2, double F, double alpha,
                           double cos_theta) {
    // |B| = alpha c F, at angle theta to F
    FieldConfig cfg;
    cfg.n = n;
    cfg.n1 = n1;
    cfg.n2 = n2;
    cfg.F = {F, 0, 0};
    double B = alpha * kC * F;
    double sin_theta = std::sqrt(1.0 - cos_theta * cos_theta);
    cfg.B = {B * cos_theta, B * sin_theta, 0};
    return cfg;
}
} // namespace

TEST_CASE("effective field of the moving pair") {
    Vec3 f = effective_field({1, 0, 0}, {0, 0, 1}, 1836.0);
    CHECK(f.x == 0.0);
    CHECK(f.z == 0.0);
    CHECK(f.y == doctest::Approx(-1.0 / (1836.0 * kC)).epsilon(1e-12));
    CHECK(f.y == doctest::Approx(-3.975e-6).epsilon(1e-3));
    CHECK(norm(effective_field({0, 0, 2}, {0, 0, 1}, 10.0)) == 0.0);
    CHECK(norm(effective_field({1, 1, 0}, {0, 0, 0}, 10.0)) == 0.0);
}

TEST_CASE("pseudo-spin frequencies: Zeeman, Stark and crossed-field limits") {
    FieldConfig zeeman;
    zeeman.n = 3;
    zeeman.B = {0, 0, 1e-5};
    auto fz = pseudo_spin_frequencies(zeeman);
    CHECK(fz.omega1 == doctest::Approx(1e-5 / (2 * kC)).epsilon(1e-12));
    CHECK(fz.omega2 == doctest::Approx(fz.omega1).epsilon(1e-12));

    FieldConfig stark;
    stark.n = 3;
    stark.F = {0, 0, 1e-7};
    auto fs = pseudo_spin_frequencies(stark);
    CHECK(fs.omega1 == doctest::Approx(1.5 * 3 * 1e-7).epsilon(1e-12));
    CHECK(fs.omega2 == doctest::Approx(fs.omega1).epsilon(1e-12));

    FieldConfig crossed;
    crossed.n = 3;
    crossed.F = {1e-7, 0, 0};
    crossed.B = {0, 0, 1e-5};
    auto fc = pseudo_spin_frequencies(crossed);
    double expect = std::sqrt(1e-10 + 9 * kC * kC * 9 * 1e-14) / (2 * kC);
    CHECK(fc.omega1 == doctest::Approx(expect).epsilon(1e-12));
    CHECK(fc.omega1 == doctest::Approx(fc.omega2).epsilon(1e-12));
}

TEST_CASE("first-order energy: Stark and Zeeman reductions") {
    FieldConfig stark;
    stark.n = 3;
    stark.n1 = 1;
    stark.n2 = 1;
    stark.F = {0, 0, 1e-7};
    CHECK(first_order_energy(stark) == doctest::Approx(9.0 * 1e-7).epsilon(1e-12));

    FieldConfig zeeman;
    zeeman.n = 5;
    zeeman.n1 = 2;
    zeeman.n2 = -1;  // m = n1 + n2
    zeeman.B = {0, 0, 2e-6};
    CHECK(first_order_energy(zeeman) ==
          doctest::Approx((2.0 - 1.0) * 2e-6 / (2 * kC)).epsilon(1e-12));
}

TEST_CASE("quantized initial conditions: energy and geometry") {
    FieldConfig cfg = crossed_config(3, 1, 1, 1e-7, 9.0, 0.5);
    for (std::uint64_t seed : {1ull, 7ull, 42ull}) {
        QuantizedState st = quantized_initial_conditions(cfg, seed);
        double H0 = 0.5 * dot(st.v, st.v) - 1.0 / norm(st.r);
        CHECK(H0 == doctest::Approx(-1.0 / 18.0).epsilon(1e-12));
        // L.A = 0 and L^2/n^2 + A^2 = 1
        CHECK(dot(st.element.L, st.element.A) == doctest::Approx(0.0).epsilon(1e-10));
        CHECK(dot(st.element.L, st.element.L) / 9.0 + dot(st.element.A, st.element.A) ==
              doctest::Approx(1.0).epsilon(1e-10));
        // pseudo-spin magnitudes and projections
        auto f = pseudo_spin_frequencies(cfg);
        CHECK(norm(st.J1) == doctest::Approx(1.5).epsilon(1e-12));
        CHECK(norm(st.J2) == doctest::Approx(1.5).epsilon(1e-12));
        CHECK(dot(st.J1, normalized(f.Btilde1)) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(dot(st.J2, normalized(f.Btilde2)) == doctest::Approx(1.0).epsilon(1e-10));
        // the state is on the ellipse: L = r x v
        Vec3 L = cross(st.r, st.v);
        CHECK(norm(L - st.element.L) < 1e-10);
    }
}

TEST_CASE("quantized initial conditions: pure-Zeeman L_z and n=1 degenerate case") {
    FieldConfig cfg;
    cfg.n = 3;
    cfg.n1 = 1;
    cfg.n2 = 1;
    cfg.B = {0, 0, 1e-6};
    QuantizedState st = quantized_initial_conditions(cfg, 11);
    CHECK(st.element.L.z == doctest::Approx(2.0).epsilon(1e-10));

    FieldConfig ground;
    ground.n = 1;
    ground.B = {0, 0, 1e-6};
    QuantizedState g = quantized_initial_conditions(ground, 3);
    CHECK(norm(g.element.L) < 1e-12);
    CHECK(norm(g.element.A) == doctest::Approx(1.0).epsilon(1e-12));
    double H0 = 0.5 * dot(g.v, g.v) - 1.0 / norm(g.r);
    CHECK(H0 == doctest::Approx(-0.5).epsilon(1e-9));
}

TEST_CASE("quantized initial conditions: projection validation") {
    FieldConfig cfg;
    cfg.n = 3;
    cfg.n1 = 2;  // j = 1, so |n1| <= 1
    cfg.B = {0, 0, 1e-6};
    CHECK_THROWS_AS(quantized_initial_conditions(cfg, 1), InvalidProjection);
    cfg.n1 = 0.5;  // not reachable in unit steps from j = 1
    CHECK_THROWS_AS(quantized_initial_conditions(cfg, 1), InvalidProjection);
    // even n: half-integer projections are the valid ones
    FieldConfig even;
    even.n = 2;
    even.n1 = 0.5;
    even.n2 = -0.5;
    even.B = {0, 0, 1e-6};
    CHECK_NOTHROW(quantized_initial_conditions(even, 1));
}

TEST_CASE("averaged flow: |J| conserved to 1e-10, rotation at omega1/omega2") {
    FieldConfig cfg = crossed_config(3, 1, 1, 2e-7, 9.0, 0.5);
    auto f = pseudo_spin_frequencies(cfg);
    QuantizedState st = quantized_initial_conditions(cfg, 5);

    auto rhs = [&](double, const numkit::State& y, numkit::State& dy) {
        Vec3 J1{y[0], y[1], y[2]}, J2{y[3], y[4], y[5]}, d1, d2;
        pseudo_spin_rhs(cfg, J1, J2, d1, d2);
        dy = {d1.x, d1.y, d1.z, d2.x, d2.y, d2.z};
    };
    numkit::OdeSolver opt;
    opt.abs_tol = 1e-14;
    opt.rel_tol = 1e-13;
    double t_end = 3.0 / f.omega1;
    numkit::OdeResult r = numkit::integrate_ode(
        rhs, {st.J1.x, st.J1.y, st.J1.z, st.J2.x, st.J2.y, st.J2.z}, 0, t_end, {}, opt);

    // |J| conservation
    for (size_t i = 0; i < r.y.size(); i += std::max<size_t>(1, r.y.size() / 50)) {
        Vec3 J1{r.y[i][0], r.y[i][1], r.y[i][2]};
        Vec3 J2{r.y[i][3], r.y[i][4], r.y[i][5]};
        CHECK(norm(J1) == doctest::Approx(1.5).epsilon(1e-10));
        CHECK(norm(J2) == doctest::Approx(1.5).epsilon(1e-10));
    }

    // rotation frequency: unwrapped azimuth of the transverse component
    Vec3 e3 = normalized(f.Btilde1);
    Vec3 e1 = any_perpendicular(e3), e2 = cross(e3, e1);
    double prev = 0, total = 0;
    bool first = true;
    std::vector<double> ts, phis;
    for (size_t i = 0; i < r.y.size(); ++i) {
        Vec3 J1{r.y[i][0], r.y[i][1], r.y[i][2]};
        double phi = std::atan2(dot(J1, e2), dot(J1, e1));
        if (!first) {
            double d = phi - prev;
            while (d > M_PI) d -= 2 * M_PI;
            while (d < -M_PI) d += 2 * M_PI;
            total += d;
        }
        first = false;
        prev = phi;
        ts.push_back(r.t[i]);
        phis.push_back(total);
    }
    double omega_fit = std::fabs(total) / (ts.back() - ts.front());
    CHECK(omega_fit == doctest::Approx(f.omega1).epsilon(1e-8));
}

TEST_CASE("adiabatic switch: no fields leaves the energy exactly at -1/(2n^2)") {
    FieldConfig cfg;
    cfg.n = 3;
    cfg.n1 = 1;
    cfg.n2 = 1;
    cfg.B = {0, 0, 1e-9};  // negligible but nonzero so axes are defined
    QuantizedState st = quantized_initial_conditions(cfg, 2);
    FieldConfig off = cfg;
    off.B = {0, 0, 0};
    off.F = {0, 0, 0};
    SwitchingParams run;
    run.rate = 1e-3;
    SwitchingRun out = adiabatic_switch(off, st, run);
    CHECK(!out.ionized);
    CHECK(out.final_energy == doctest::Approx(-1.0 / 18.0).epsilon(1e-9));
    for (const auto& s : out.samples)
        CHECK(s.energy == doctest::Approx(-1.0 / 18.0).epsilon(1e-8));
}

TEST_CASE("adiabatic switch: gauge force changes pure-B energy; removal conserves it") {
    FieldConfig cfg;
    cfg.n = 3;
    cfg.n1 = 1;
    cfg.n2 = 1;
    cfg.B = {0, 0, 5e-5};
    QuantizedState st = quantized_initial_conditions(cfg, 4);
    double E0 = -1.0 / 18.0;

    SwitchingParams with_gauge;
    with_gauge.rate = 2.5e-4;  // faster ramp keeps this test cheap
    SwitchingRun a = adiabatic_switch(cfg, st, with_gauge);
    CHECK(std::fabs(a.final_energy - E0) > 1e-9);  // paramagnetic shift appears

    SwitchingParams no_gauge = with_gauge;
    no_gauge.include_gauge_force = false;
    SwitchingRun b = adiabatic_switch(cfg, st, no_gauge);
    CHECK(b.final_energy == doctest::Approx(E0).epsilon(1e-10));  // wrongly conserved
}

TEST_CASE("adiabatic switch: energy rate equals dH/dt along the flow") {
    FieldConfig cfg = crossed_config(3, 1, 1, 5e-7, 9.0, 0.5);
    QuantizedState st = quantized_initial_conditions(cfg, 8);
    SwitchingParams run;
    run.rate = 1e-3;
    run.max_samples = 100000;
    SwitchingRun out = adiabatic_switch(cfg, st, run);
    // integrate dH/dt = lambda_dot (F.r + B.L/2c) with the trapezoid rule on samples
    double acc = 0;
    for (size_t i = 1; i < out.samples.size(); ++i) {
        const auto& s0 = out.samples[i - 1];
        const auto& s1 = out.samples[i];
        auto term = [&](const SwitchingSample& s) {
            Vec3 L = cross(s.r, s.v);
            return dot(cfg.F, s.r) + dot(cfg.B, L) / (2 * kC);
        };
        acc += 0.5 * (term(s0) + term(s1)) * (s1.lambda - s0.lambda);
    }
    double dE = out.final_energy - out.samples.front().energy;
    CHECK(acc == doctest::Approx(dE).epsilon(5e-3));
}

TEST_CASE("adiabatic switch: weak-field energies match first order, residual ~ F^2") {
    // fields large enough that the second-order shift clears the integrator
    // noise floor, small enough that the manifolds stay separated
    std::vector<double> lF, lresid;
    for (double F : {2e-6, 4e-6, 8e-6}) {
        FieldConfig cfg = crossed_config(3, 1, 1, F, 9.0, 0.5);
        QuantizedState st = quantized_initial_conditions(cfg, 3);
        SwitchingParams run;
        run.rate = 2.5e-5;
        run.abs_tol = 1e-13;
        run.rel_tol = 1e-13;
        SwitchingRun out = adiabatic_switch(cfg, st, run);
        double resid = std::fabs(out.final_energy - (-1.0 / 18.0) - first_order_energy(cfg));
        lF.push_back(std::log(F));
        lresid.push_back(std::log(resid));
    }
    double slope = (lresid.back() - lresid.front()) / (lF.back() - lF.front());
    CHECK(slope == doctest::Approx(2.0).epsilon(0.10));
}

TEST_CASE("adiabatic switch: halving the rate improves adiabatic convergence") {
    FieldConfig cfg = crossed_config(3, 1, 1, 4e-6, 9.0, 0.5);
    QuantizedState st = quantized_initial_conditions(cfg, 9);
    std::vector<double> finals;
    for (double rate : {8e-4, 4e-4, 2e-4, 1e-4}) {
        SwitchingParams run;
        run.rate = rate;
        run.ramp = Ramp::smoothstep;
        run.abs_tol = 1e-13;
        run.rel_tol = 1e-13;
        finals.push_back(adiabatic_switch(cfg, st, run).final_energy);
    }
    // Richardson-style reference from the two slowest runs
    double ref = finals[3] + (finals[3] - finals[2]) / 3.0;
    double e0 = std::fabs(finals[0] - ref);
    double e1 = std::fabs(finals[1] - ref);
    double e2 = std::fabs(finals[2] - ref);
    CHECK(e1 < e0);
    CHECK(e2 < e1);
}

TEST_CASE("field strength validation: manifold overlap rejected") {
    FieldConfig cfg;
    cfg.n = 3;
    cfg.F = {1e-3, 0, 0};  // enormous field
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
}
