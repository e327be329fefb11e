#include "doctest.h"

#include "semiclassica/quadrature.hpp"
#include "semiclassica/root_finding.hpp"
#include "semiclassica/ode.hpp"
#include "semiclassica/units.hpp"
#include "semiclassica/errors.hpp"

#include <cmath>
#include <random>

using namespace semiclassica;
using namespace semiclassica::numkit;

TEST_CASE("integrate: inverse-sqrt endpoints give arcsin integral") {
    Quadrature q(1e-12, 1e-12, 4000, EndpointMode::inv_sqrt_both);
    double I = integrate([](double x) { return 1.0 / std::sqrt(1.0 - x * x); }, -1, 1, q);
    CHECK(I == doctest::Approx(M_PI).epsilon(1e-10));
}

TEST_CASE("integrate: polynomial") {
    double I = integrate([](double x) { return x * x; }, 0, 1, Quadrature(1e-13, 1e-13));
    CHECK(I == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("integrate: polar action integral equals pi (L - |m|)") {
    // sqrt(L^2 - m^2/sin^2 t) over the classically allowed interval
    double L = 2.5, m = 1.0;
    double t1 = std::asin(m / L), t2 = M_PI - t1;
    Quadrature q(1e-11, 1e-11, 6000, EndpointMode::inv_sqrt_both);
    double I = integrate(
        [&](double t) {
            double v = L * L - m * m / (std::sin(t) * std::sin(t));
            return v > 0 ? std::sqrt(v) : 0.0;
        },
        t1, t2, q);
    CHECK(I == doctest::Approx(M_PI * (L - m)).epsilon(1e-8));
    // high-resolution trapezoid oracle on the open interval agrees
    const int N = 2000000;
    double h = (t2 - t1) / N, T = 0;
    for (int i = 0; i < N; ++i) {
        double t = t1 + (i + 0.5) * h;
        double v = L * L - m * m / (std::sin(t) * std::sin(t));
        T += v > 0 ? std::sqrt(v) * h : 0.0;
    }
    CHECK(I == doctest::Approx(T).epsilon(1e-5));
}

TEST_CASE("integrate: linearity on random polynomials") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    for (int trial = 0; trial < 5; ++trial) {
        double c0 = uni(rng), c1 = uni(rng), c2 = uni(rng), c3 = uni(rng);
        auto f = [&](double x) { return c0 + c2 * x * x; };
        auto g = [&](double x) { return c1 * x + c3 * x * x * x; };
        double alpha = uni(rng), beta = uni(rng);
        Quadrature q(1e-12, 1e-12);
        double lhs = integrate([&](double x) { return alpha * f(x) + beta * g(x); }, -1, 2, q);
        double rhs = alpha * integrate(f, -1, 2, q) + beta * integrate(g, -1, 2, q);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("integrate: NaN in the integrand is reported") {
    CHECK_THROWS_AS(integrate([](double x) { return std::sqrt(x - 0.5); }, 0, 1,
                              Quadrature(1e-12, 1e-12)),
                    NumericalError);
}

TEST_CASE("find_root: sqrt(2) and the Coulomb l=0 action") {
    double r = find_root([](double x) { return x * x - 2.0; }, 1, 2);
    CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    // pi/sqrt(-2E) - pi = 0  at E = -1/2 (hydrogen ground state)
    auto f = [](double E) { return M_PI / std::sqrt(-2.0 * E) - M_PI; };
    double E = find_root(f, -1.0, -0.1);
    CHECK(E == doctest::Approx(-0.5).epsilon(1e-10));
}

TEST_CASE("find_root: fixed point property and error path") {
    auto f = [](double x) { return std::cos(x) - x; };
    double r = find_root(f, 0, 1);
    double r2 = find_root(f, r - 1e-3, r + 1e-3);
    CHECK(r == doctest::Approx(r2).epsilon(1e-12));
    CHECK_THROWS_AS(find_root([](double x) { return x * x + 1; }, -1, 1), NoSignChange);
}

TEST_CASE("find_root_complex: z^2 + 1 and e^z - 2") {
    ComplexNewtonOptions opt;
    auto r1 = find_root_complex([](std::complex<double> z) { return z * z + 1.0; },
                                {0.1, 0.9}, opt);
    CHECK(std::abs(r1.root - std::complex<double>(0, 1)) < 1e-10);
    auto r2 = find_root_complex([](std::complex<double> z) { return std::exp(z) - 2.0; },
                                {1.0, 0.0}, opt);
    CHECK(std::abs(r2.root - std::log(2.0)) < 1e-10);
    CHECK(r2.iterations < 30);
}

TEST_CASE("integrate_ode: harmonic oscillator closes after one period") {
    auto rhs = [](double, const State& y, State& dy) {
        dy = {y[1], -y[0]};
    };
    OdeSolver s;
    s.abs_tol = 1e-12;
    s.rel_tol = 1e-12;
    OdeResult r = integrate_ode(rhs, {1.0, 0.0}, 0, 2 * M_PI, {}, s);
    CHECK(r.y.back()[0] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::fabs(r.y.back()[1]) < 1e-8);
}

TEST_CASE("integrate_ode: Kepler orbit closes after one period") {
    // E = -1/2 -> a = 1, T = 2 pi
    auto rhs = [](double, const State& y, State& dy) {
        double r3 = std::pow(std::hypot(y[0], y[1]), 3);
        dy = {y[2], y[3], -y[0] / r3, -y[1] / r3};
    };
    OdeSolver s;
    s.abs_tol = 1e-13;
    s.rel_tol = 1e-12;
    State y0 = {0.8, 0.0, 0.0, std::sqrt(2.0 / 0.8 - 1.0)};  // a = 1, e = 0.2
    OdeResult r = integrate_ode(rhs, y0, 0, 2 * M_PI, {}, s);
    for (int i = 0; i < 4; ++i) CHECK(r.y.back()[i] == doctest::Approx(y0[i]).epsilon(1e-7));
}

TEST_CASE("integrate_ode: event location") {
    auto rhs = [](double, const State& y, State& dy) {
        dy = {y[1], -y[0]};
    };
    auto ev = [](double, const State& y) { return y[0]; };
    OdeSolver s;
    s.event_tol = 1e-12;
    OdeResult r = integrate_ode(rhs, {1.0, 0.0}, 0, 10, {ev}, s);
    REQUIRE(!r.events.empty());
    CHECK(r.events.front().t == doctest::Approx(M_PI / 2).epsilon(1e-9));
}

TEST_CASE("integrate_ode: halving tolerances improves the result") {
    auto rhs = [](double, const State& y, State& dy) {
        dy = {y[1], -std::sin(y[0])};
    };
    State y0 = {2.0, 0.0};
    auto run = [&](double tol) {
        OdeSolver s;
        s.abs_tol = tol;
        s.rel_tol = tol;
        return integrate_ode(rhs, y0, 0, 30.0, {}, s).y.back()[0];
    };
    double ref = run(1e-13);
    double e1 = std::fabs(run(1e-6) - ref);
    double e2 = std::fabs(run(1e-8) - ref);
    double e3 = std::fabs(run(1e-10) - ref);
    CHECK(e2 < e1);
    CHECK(e3 < e2);
}

TEST_CASE("units: conversions roundtrip") {
    using namespace units;
    CHECK(ev_to_au(au_to_ev(0.3)) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(kv_cm_to_au(au_to_kv_cm(1.7e-6)) == doctest::Approx(1.7e-6).epsilon(1e-14));
    CHECK(tesla_to_au(au_to_tesla(2.5e-5)) == doctest::Approx(2.5e-5).epsilon(1e-14));
    CHECK(s_to_au_time(au_time_to_s(123.0)) == doctest::Approx(123.0).epsilon(1e-14));
    CHECK(kv_cm_to_au(8.0) == doctest::Approx(1.5557e-6).epsilon(1e-4));
}
