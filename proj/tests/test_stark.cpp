#include "doctest.h"

#include "semiclassica/stark.hpp"
#include "semiclassica/units.hpp"

#include <cmath>
#include <vector>

using namespace semiclassica;
using namespace semiclassica::stark;

namespace {
const double kField = units::kv_cm_to_au(8.0);
}

TEST_CASE("action integrals: real positive on the real axis at m=0") {
    ActionData a = action_and_exponent({2e-4, 0}, kField, 0);
    CHECK(a.S.imag() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(a.S.real() > 0);
    CHECK(a.w.imag() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(a.w.real() > 0);
}

TEST_CASE("action integrals: dS/dE consistent with central differences") {
    cplx E{2e-4, -2e-5};
    double h = 1e-10;
    ActionData a = action_and_exponent(E, kField, 0);
    ActionData ap = action_and_exponent(E + h, kField, 0);
    ActionData am = action_and_exponent(E - h, kField, 0);
    cplx fd = (ap.S - am.S) / (2.0 * h);
    CHECK(std::abs(fd - a.dS_dE) / std::abs(a.dS_dE) < 1e-5);
}

TEST_CASE("instability exponent grows like ln(1/F) as F -> 0") {
    // the u0 ~ sqrt(2E/F) regime needs F well below E^2/4
    const double E = 5e-2;
    std::vector<double> lnF, w;
    for (double F = 1e-5; F > 1e-7 / 2; F /= 4) {
        w.push_back(action_and_exponent({E, 0}, F, 0).w.real());
        lnF.push_back(std::log(1.0 / F));
    }
    // w ~ 2 ln(1/F) asymptotically: successive differences match the ln spacing
    for (size_t i = 1; i < w.size(); ++i) {
        double slope = (w[i] - w[i - 1]) / (lnF[i] - lnF[i - 1]);
        CHECK(slope == doctest::Approx(2.0).epsilon(0.05));
    }
}

TEST_CASE("resonances: all printed rows to 1%") {
    struct Row { int n1, n2, m; double Eg, Gg; };
    const std::vector<Row> rows = {
        {23, 0, 0, 1.899e-4, 0.499e-4}, {23, 1, 0, 1.774e-4, 1.480e-4},
        {23, 0, 1, 2.597e-4, 1.145e-4}, {24, 0, 0, 3.360e-4, 0.632e-4},
        {24, 1, 0, 3.251e-4, 1.887e-4}, {24, 0, 1, 4.021e-4, 1.355e-4}};
    for (const auto& r : rows) {
        ComplexResonance res = solve_resonance({kField, r.m, r.n1, r.n2});
        CHECK(res.E.real() == doctest::Approx(r.Eg).epsilon(0.01));
        CHECK(res.Gamma == doctest::Approx(r.Gg).epsilon(0.01));
        CHECK(res.Gamma > 0);
        CHECK(res.iterations < 30);
        CHECK(res.residual < 1e-10 * std::abs(res.S));
    }
}

TEST_CASE("widths grow with n2 at fixed (n1, m)") {
    double g0 = solve_resonance({kField, 0, 23, 0}).Gamma;
    double g1 = solve_resonance({kField, 0, 23, 1}).Gamma;
    CHECK(g1 > g0);
    double h0 = solve_resonance({kField, 0, 24, 0}).Gamma;
    double h1 = solve_resonance({kField, 0, 24, 1}).Gamma;
    CHECK(h1 > h0);
}

TEST_CASE("width is linear in the hbar knob") {
    // shrinking hbar at a fixed resonance energy means rescaling the quantum
    // number so (2 n1 + 1) hbar stays put; the width then scales like hbar
    std::vector<double> lh, lg;
    for (double h : {0.5, 2.0 / 3.0, 0.8, 1.0}) {
        int n1 = int(std::lround((47.0 / h - 1.0) / 2.0));
        StarkProblem p{kField, 0, n1, 0};
        ComplexResonance r = solve_resonance(p, initial_guess(p, h), h);
        // normalize out the slight E-drift between integer n1 choices
        double energy_scale = (p.n2 + 0.5) * r.w.real() / std::abs(r.S.real());
        lh.push_back(std::log(h));
        lg.push_back(std::log(r.Gamma / energy_scale));
    }
    double mx = 0, my = 0;
    for (size_t i = 0; i < lh.size(); ++i) { mx += lh[i]; my += lg[i]; }
    mx /= lh.size();
    my /= lh.size();
    double num = 0, den = 0;
    for (size_t i = 0; i < lh.size(); ++i) {
        num += (lh[i] - mx) * (lg[i] - my);
        den += (lh[i] - mx) * (lh[i] - mx);
    }
    CHECK(num / den == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("hyperbolic fixed point of the unbounded coordinate") {
    // v* = sqrt(|m| hbar) (2E)^{-1/4} e^{i pi/4}: dH2/dv = m^2/v^3 ... vanishes there
    ComplexResonance res = solve_resonance({kField, 1, 23, 0});
    cplx E = res.E;
    cplx vstar = std::sqrt(1.0) * std::pow(2.0 * E, -0.25) *
                 std::exp(cplx(0, M_PI / 4));
    // dH2/dv at p_v = 0: -m^2/v^3 - 2 E v - 2 F v^3
    cplx dH2 = -1.0 / std::pow(vstar, 3) - 2.0 * E * vstar - 2.0 * kField * std::pow(vstar, 3);
    // first order in hbar: the F-term is higher order; the residual is O(F v*^3)
    CHECK(std::abs(dH2) < 10.0 * std::abs(2.0 * kField * std::pow(vstar, 3)));
}

TEST_CASE("gutzwiller response: sinh expansion identity and pole proximity") {
    // resumming 1/sinh as a geometric series reproduces the direct sum
    cplx S{3.0, 0.2}, w{1.1, -0.05}, T{100.0, 0.0};
    cplx direct = gutzwiller_response(S, w, T, 2, 40);
    cplx resummed = 0;
    for (int n = 1; n <= 40; ++n) {
        cplx phase = std::exp(double(n) * (cplx(0, 1) * (S - M_PI)));
        cplx inv_sinh = 0;
        for (int k = 0; k < 200; ++k)
            inv_sinh += 2.0 * std::exp(-(2.0 * k + 1.0) * double(n) * w / 2.0);
        resummed += phase * inv_sinh;
    }
    resummed *= -cplx(0, 0.5) * T;
    CHECK(std::abs(direct - resummed) / std::abs(direct) < 1e-12);

    // w -> large: single-term dominance (corrections ~ e^{-w})
    cplx big = gutzwiller_response(S, {60.0, 0.0}, T, 2, 50);
    cplx one = -cplx(0, 0.5) * T * std::exp(cplx(0, 1) * (S - M_PI)) / std::sinh(cplx(30.0, 0.0));
    CHECK(std::abs(big - one) / std::abs(one) < 1e-10);
}

TEST_CASE("gutzwiller response spikes at the resonance") {
    ComplexResonance res = solve_resonance({kField, 0, 23, 0});
    double at_res = std::abs(gutzwiller_response(res.E + cplx(0, 1e-7), kField, 0, 2, 200));
    double off1 = std::abs(gutzwiller_response(res.E + cplx(2e-6, 1e-7), kField, 0, 2, 200));
    double off2 = std::abs(gutzwiller_response(res.E + cplx(0, 6e-6), kField, 0, 2, 200));
    CHECK(at_res > 5.0 * off1);
    CHECK(at_res > 5.0 * off2);
}

TEST_CASE("wrong-sheet and validation errors") {
    CHECK_THROWS_AS(solve_resonance({kField, 0, 23, -1}), InvalidArgument);
    CHECK_THROWS_AS(action_and_exponent({2e-4, 0}, -1.0, 0), InvalidArgument);
}
