#include "semiclassica/wkb1d.hpp"
#include "semiclassica/root_finding.hpp"

#include <algorithm>
#include <cmath>

namespace semiclassica::wkb1d {

double morse_index(CausticKind kind) {
    switch (kind) {
    case CausticKind::turning_point:       return 0.25;
    case CausticKind::coulomb_singularity: return -0.25;
    case CausticKind::rotation:            return 0.0;
    case CausticKind::z_axis_caustic:      return 0.25;
    }
    return 0.25;
}

double angular_momentum_of(int l, int m) {
    if (l < 0 || std::abs(m) > l)
        throw InvalidArgument("angular_momentum_of: requires l >= |m| >= 0");
    return l == 0 ? 0.0 : l + 0.5;
}

void polar_turning_points(int l, int m, double& theta1, double& theta2) {
    double L = angular_momentum_of(l, m);
    if (L == 0) { theta1 = 0; theta2 = M_PI; return; }
    theta1 = std::asin(std::abs(m) / L);
    theta2 = M_PI - theta1;
}

namespace {

struct TurningPoints {
    double r1, r2;
    bool inner_singular;  // r1 = 0 at a Coulomb singularity (L = 0 case)
};

TurningPoints locate_turning_points(const RadialProblem& p, double E, double L) {
    const double m = p.mass;
    auto g = [&](double r) { return E - p.potential(r) - L * L / (2 * m * r * r); };

    // scan a broad logarithmic grid for the classically allowed region
    const int N = 480;
    const double rmin = 1e-6, rmax = 1e5;
    double best = -INFINITY;
    int ibest = -1;
    std::vector<double> rs(N), gs(N);
    for (int i = 0; i < N; ++i) {
        rs[i] = rmin * std::pow(rmax / rmin, double(i) / (N - 1));
        gs[i] = g(rs[i]);
        if (gs[i] > best) { best = gs[i]; ibest = i; }
    }
    if (best <= 0)
        throw NoBoundState("radial problem: no classically allowed region at this energy");

    TurningPoints tp{0, 0, false};
    numkit::RootOptions ro;
    ro.x_tol = 1e-14;

    int i = ibest;
    while (i > 0 && gs[i - 1] > 0) --i;
    if (i == 0) {
        if (L == 0 && p.inner_caustic == CausticKind::coulomb_singularity) {
            tp.r1 = 0.0;
            tp.inner_singular = true;
        } else {
            throw NoBoundState("radial problem: inner turning point not found");
        }
    } else {
        tp.r1 = numkit::find_root(g, rs[i - 1], rs[i], ro);
    }

    i = ibest;
    while (i + 1 < N && gs[i + 1] > 0) ++i;
    if (i + 1 >= N)
        throw NoBoundState("radial problem: outer turning point not found (state unbound?)");
    tp.r2 = numkit::find_root(g, rs[i], rs[i + 1], ro);

    if (tp.r2 - tp.r1 < 1e-9 * (1 + tp.r2))
        throw DegenerateTurningPoints("radial problem: turning points coincide "
                                      "(energy at a potential extremum)");
    return tp;
}

} // namespace

double radial_action(const RadialProblem& p, double E) {
    const double m = p.mass;
    const double L = angular_momentum_of(p.l, p.m);
    TurningPoints tp = locate_turning_points(p, E, L);
    auto integrand = [&](double r) {
        double v = 2 * m * (E - p.potential(r)) - L * L / (r * r);
        return v > 0 ? std::sqrt(v) : 0.0;
    };
    numkit::Quadrature q(1e-11, 1e-11, 6000, numkit::EndpointMode::inv_sqrt_both);
    return numkit::integrate(integrand, tp.r1, tp.r2, q);
}

std::vector<SpectrumEntry> radial_spectrum(const RadialProblem& p, int n_r_max,
                                           double E_lo, double E_hi) {
    if (!(E_lo < E_hi)) throw InvalidArgument("radial_spectrum: requires E_lo < E_hi");
    const double alpha_sum =
        morse_index(p.inner_caustic) + morse_index(CausticKind::turning_point);
    const bool coulomb_s_wave =
        p.l == 0 && p.inner_caustic == CausticKind::coulomb_singularity;
    const int n_r_start = coulomb_s_wave ? 1 : 0;

    // pre-sample the (monotone in E) action over the bracket
    const int NS = 160;
    std::vector<double> Es(NS), acts(NS);
    for (int i = 0; i < NS; ++i) {
        Es[i] = E_lo + (E_hi - E_lo) * i / (NS - 1.0);
        try {
            acts[i] = radial_action(p, Es[i]);
        } catch (const NumericalError&) {
            acts[i] = NAN;
        }
    }

    std::vector<SpectrumEntry> out;
    for (int n_r = n_r_start; n_r <= n_r_max; ++n_r) {
        double rhs = M_PI * (n_r + alpha_sum);
        int cell = -1;
        for (int i = 0; i + 1 < NS; ++i) {
            if (std::isnan(acts[i]) || std::isnan(acts[i + 1])) continue;
            if ((acts[i] - rhs) * (acts[i + 1] - rhs) <= 0) { cell = i; break; }
        }
        if (cell < 0) {
            if (out.empty())
                throw BracketTooNarrow("radial_spectrum: bracket contains no level");
            break;  // remaining levels lie above E_hi
        }
        auto fn = [&](double E) { return radial_action(p, E) - rhs; };
        numkit::RootOptions ro;
        ro.x_tol = 1e-13 * std::max(1.0, std::fabs(Es[cell]));
        double E = numkit::find_root(fn, Es[cell], Es[cell + 1], ro);
        out.push_back({n_r, p.l, p.m, E, std::fabs(fn(E))});
    }
    if (out.empty())
        throw NoBoundState("radial_spectrum: no bound state in bracket");
    return out;
}

} // namespace semiclassica::wkb1d
