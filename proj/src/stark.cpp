#include "semiclassica/stark.hpp"
#include "semiclassica/quadrature.hpp"
#include "semiclassica/root_finding.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace semiclassica::stark {

namespace {

const int kGlOrder = 160;

// distance from point z to the segment [0, u0] in the complex plane
double segment_distance(cplx z, cplx u0) {
    cplx d = u0;
    double len2 = std::norm(d);
    double t = std::clamp((z.real() * d.real() + z.imag() * d.imag()) / len2, 0.0, 1.0);
    return std::abs(z - t * d);
}

struct Quartic {
    cplx u0sq, u1sq, u0, u1, sqrtF;
};

Quartic factor_quartic(cplx E, double F) {
    if (F <= 0) throw InvalidArgument("stark: field must be positive");
    cplx disc = std::sqrt(E * E + 4.0 * F);
    Quartic q;
    q.u0sq = (E + disc) / F;
    q.u1sq = (E - disc) / F;
    q.u0 = std::sqrt(q.u0sq);
    if (q.u0.real() < 0) q.u0 = -q.u0;
    q.u1 = std::sqrt(q.u1sq);
    q.sqrtF = std::sqrt(cplx(F));
    if (!(std::abs(q.u0) > 0))
        throw TurningPointNotFound("stark: external turning point not found");
    // the contour must stay clear of the other quartic roots
    double guard = 1e-3 * std::abs(q.u0);
    if (segment_distance(q.u1, q.u0) < guard || segment_distance(-q.u1, q.u0) < guard ||
        segment_distance(-q.u0, q.u0) < guard)
        throw BranchCut("stark: quartic root too close to the integration contour");
    return q;
}

} // namespace

ActionData action_and_exponent(cplx E, double F, int m, double hbar) {
    const Quartic q = factor_quartic(E, F);
    const int mm = std::abs(m);

    // u = u0 (1 - t^2) absorbs the sqrt(u0 - u) turning-point zero;
    // sqrt(2E u^2 + 4 - F u^4) = sqrtF * u0 t sqrt(2-t^2) * sqrt(u^2 - u1^2),
    // branch fixed by continuity from u = 0 where the integrand equals 2.
    std::vector<double> xs, ws;
    numkit::gauss_legendre_nodes(kGlOrder, 0.0, 1.0, xs, ws);

    cplx S_int = 0, w_int = 0, dS = 0;
    for (int i = 0; i < kGlOrder; ++i) {
        double t = xs[i];
        cplx u = q.u0 * (1.0 - t * t);
        cplx v = std::sqrt(u * u - q.u1sq);
        if (v.real() < 0) v = -v;  // keep the factor in the right half plane
        double root2 = std::sqrt(2.0 - t * t);
        cplx denom = q.sqrtF * root2 * v;
        S_int += ws[i] * (4.0 * q.u0sq) * (t * t) * root2 * q.sqrtF * v;
        w_int += ws[i] * 2.0 / denom;
        dS += ws[i] * (4.0 * q.u0sq) * std::pow(1.0 - t * t, 2) / denom;
    }

    ActionData out;
    out.u0 = q.u0;
    out.w = 4.0 * std::sqrt(2.0 * E) * w_int;
    // the centrifugal contribution widens the resonance: its w-term must add
    // to the (n2 + 1/2) width in the pole condition on the decaying sheet
    out.S = S_int - double(mm) * M_PI * hbar + cplx(0, 0.5) * double(mm) * hbar * out.w;
    out.dS_dE = dS;
    return out;
}

cplx initial_guess(const StarkProblem& p, double hbar) {
    const int mm = std::abs(p.m);
    // real-axis WKB estimate: S_int(E) - |m| pi hbar = (2 n1 + 1) pi hbar
    auto phase = [&](double E) {
        ActionData a = action_and_exponent(cplx(E, 0), p.F, p.m, hbar);
        return (a.S.real()) - (2.0 * p.n1 + 1.0) * M_PI * hbar;
    };
    double Elo = 1e-9, Ehi = 8.0 * std::sqrt(p.F);
    for (int k = 0; phase(Ehi) < 0; ++k) {
        if (k > 60) throw NonConvergent("initial_guess: no real-axis phase match");
        Ehi *= 2;
    }
    for (int k = 0; phase(Elo) > 0; ++k) {
        if (k > 60) throw NonConvergent("initial_guess: no real-axis phase match");
        Elo *= 0.25;
    }
    numkit::RootOptions ro;
    ro.x_tol = 1e-14;
    double Er = numkit::find_root(phase, Elo, Ehi, ro);

    ActionData a = action_and_exponent(cplx(Er, 0), p.F, p.m, hbar);
    // first order in hbar: S(Er + i d) ~ S(Er) + i d dS/dE; match the width terms
    double d = hbar * (p.n2 + 0.5 + 0.5 * mm) * a.w.real() / a.dS_dE.real();
    return {Er, -d};
}

ComplexResonance solve_resonance(const StarkProblem& p, cplx guess, double hbar) {
    if (p.n1 < 0 || p.n2 < 0 || p.m < 0)
        throw InvalidArgument("solve_resonance: quantum numbers must be >= 0");
    const cplx rhs_const = (2.0 * p.n1 + 1.0) * M_PI * hbar;
    // pole condition of the response sum: S = (2n1+1) pi hbar - i hbar (n2+1/2) w
    // (the decaying sheet; the geometric-series poles fix the sign of the width term)
    auto residual = [&](cplx E) {
        ActionData a = action_and_exponent(E, p.F, p.m, hbar);
        return a.S - rhs_const + cplx(0, hbar) * (p.n2 + 0.5) * a.w;
    };

    numkit::ComplexNewtonOptions opt;
    opt.f_tol = 1e-11 * std::abs(rhs_const);
    opt.max_iterations = 60;
    numkit::ComplexRootResult r = numkit::find_root_complex(residual, guess, opt);

    if (r.root.imag() > 1e-12)
        throw WrongSheet("solve_resonance: converged on the unphysical sheet (Im E > 0)");

    ActionData a = action_and_exponent(r.root, p.F, p.m, hbar);
    ComplexResonance res;
    res.E = r.root;
    res.Gamma = -2.0 * r.root.imag();
    res.S = a.S;
    res.w = a.w;
    res.iterations = r.iterations;
    res.residual = r.residual;
    return res;
}

ComplexResonance solve_resonance(const StarkProblem& p) {
    return solve_resonance(p, initial_guess(p), 1.0);
}

cplx gutzwiller_response(cplx S, cplx w, cplx T, int lambda, int n_max) {
    if (n_max < 1) throw InvalidArgument("gutzwiller_response: n_max >= 1");
    cplx g = 0;
    const cplx phase = cplx(0, 1) * (S - double(lambda) * M_PI / 2.0);
    for (int n = 1; n <= n_max; ++n) {
        g += std::exp(double(n) * phase) / std::sinh(double(n) * w / 2.0);
    }
    return -cplx(0, 0.5) * T * g;
}

cplx gutzwiller_response(cplx E, double F, int m, int lambda, int n_max) {
    ActionData a = action_and_exponent(E, F, m);
    return gutzwiller_response(a.S, a.w, a.dS_dE, lambda, n_max);
}

} // namespace semiclassica::stark
