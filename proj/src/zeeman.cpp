#include "semiclassica/zeeman.hpp"
#include "semiclassica/quadrature.hpp"
#include "semiclassica/root_finding.hpp"

#include <algorithm>
#include <cmath>

namespace semiclassica::zeeman {

namespace {

const double kConeTheta = std::atan(0.5);           // cot(theta0) = 2
const double kPoleGap = 1e-12;                      // stay this far from the cone pole
const double kInsideMuLimit = 1.0 / std::sqrt(5.0); // inside states need mu < 1/sqrt5

double f_allowed(double theta, double lambda, double mu) {
    double s2 = std::sin(theta);
    s2 *= s2;
    double val = 1.0 + lambda / (1.0 - 5.0 * s2);
    if (mu != 0.0) val -= mu * mu / s2;
    return val;
}

// Classically allowed interval of the branch, strictly separated from the pole.
void allowed_interval(double lambda, double mu, Branch branch,
                      double& lo, double& hi) {
    numkit::RootOptions ro;
    ro.x_tol = 1e-15;
    auto f = [&](double th) { return f_allowed(th, lambda, mu); };
    if (branch == Branch::inside_cone) {
        // interval inside (0, theta0); the pole end is always forbidden
        double right = kConeTheta - kPoleGap;
        // peak of f sits left of the pole
        double peak = 0, fpeak = -INFINITY;
        for (int i = 1; i < 400; ++i) {
            double th = right * i / 400.0;
            double v = f(th);
            if (v > fpeak) { fpeak = v; peak = th; }
        }
        if (fpeak <= 0)
            throw NoRoot("zeeman: no allowed interval inside the cone");
        hi = numkit::find_root(f, peak, right, ro);
        if (mu == 0.0) {
            lo = 0.0;  // z-axis caustic replaces the turning point
        } else {
            double left = 1e-12;
            if (f(left) > 0)
                throw NoRoot("zeeman: allowed interval extends to the axis");
            lo = numkit::find_root(f, left, peak, ro);
        }
    } else {
        // symmetric interval around pi/2, strictly outside the cone
        double left = kConeTheta + kPoleGap;
        double mid = M_PI / 2;
        if (f(mid) <= 0)
            throw NoRoot("zeeman: no allowed interval outside the cone");
        lo = numkit::find_root(f, left, mid, ro);
        hi = M_PI - lo;
    }
}

} // namespace

double EffectivePotential::u_eff(double theta) const {
    return 1.0 - f_allowed(theta, lambda, mu);
}

double EffectivePotential::l_perp_sq_scaled(double theta) const {
    return f_allowed(theta, lambda, mu);
}

double lambda_invariant(const Vec3& A, const Vec3& z_axis) {
    double a2 = dot(A, A);
    if (a2 > 1.0 + 1e-12)
        throw InvalidArgument("lambda_invariant: |A| must not exceed 1");
    double az = dot(A, normalized(z_axis));
    return 4.0 * a2 - 5.0 * az * az;
}

double scaled_action(double lambda, double mu, Branch branch, bool mirrored) {
    double lo, hi;
    allowed_interval(lambda, mu, branch, lo, hi);
    if (branch == Branch::inside_cone && mirrored) {
        double l2 = M_PI - hi, h2 = M_PI - lo;
        lo = l2;
        hi = h2;
    }
    auto integrand = [&](double th) {
        double v = f_allowed(th, lambda, mu);
        return v > 0 ? std::sqrt(v) : 0.0;
    };
    numkit::Quadrature q(1e-12, 1e-12, 6000, numkit::EndpointMode::inv_sqrt_both);
    return numkit::integrate(integrand, lo, hi, q);
}

ManifoldState quantize_lambda(int n, int m, Branch branch, int index) {
    if (n < 1 || std::abs(m) >= n || index < 0)
        throw InvalidArgument("quantize_lambda: invalid quantum numbers");
    double mu = double(std::abs(m)) / n;
    if (branch == Branch::inside_cone && mu >= kInsideMuLimit)
        throw BranchForbidden("quantize_lambda: inside states require m < n/sqrt(5)");

    double target = M_PI * (index + 0.5) / n;
    // near the branch edges the allowed interval shrinks to nothing; treat an
    // unresolvable interval as zero action so the bracketing stays robust
    auto g = [&](double lambda) {
        try {
            return scaled_action(lambda, mu, branch) - target;
        } catch (const NoRoot&) {
            return -target;
        }
    };

    const double eps = 1e-9;
    double lam_lo, lam_hi;
    if (branch == Branch::inside_cone) {
        lam_lo = -1.0 + eps;                  // action -> 0
        lam_hi = -eps;                        // action maximal near the separatrix
    } else {
        lam_lo = eps;
        lam_hi = 4.0 * (1.0 - mu * mu) - eps; // allowed region closes here
    }

    // the action is monotone in lambda on each branch; bracket then refine
    double glo = g(lam_lo), ghi = g(lam_hi);
    if ((glo > 0) == (ghi > 0))
        throw NoRoot("quantize_lambda: index too large for this branch");
    numkit::RootOptions ro;
    ro.x_tol = 1e-12;
    double lambda = numkit::find_root(g, lam_lo, lam_hi, ro);

    ManifoldState st;
    st.n = n;
    st.m = m;
    st.branch = branch;
    st.index = index;
    st.lambda = lambda;
    st.epsilon = 0.5 * (1.0 + mu * mu + lambda);
    st.parity = branch == Branch::outside_cone ? (index % 2 == 0 ? 1 : -1) : 0;
    return st;
}

double harmonic_shift(int n, int m, Branch branch, int index) {
    if (n < 1 || std::abs(m) >= n || index < 0)
        throw InvalidArgument("harmonic_shift: invalid quantum numbers");
    double mu = double(std::abs(m)) / n;
    if (branch == Branch::inside_cone) {
        if (mu >= kInsideMuLimit)
            throw BranchForbidden("harmonic_shift: inside states require m < n/sqrt(5)");
        double sigma = (2.0 * index + 1.0) / n;
        return sigma * std::sqrt(5.0 + 25.0 * sigma * sigma) + std::sqrt(5.0) * mu -
               5.0 * sigma * sigma;
    }
    double kappa = (2.0 * index + 1.0) / n;
    return 2.5 - kappa * std::sqrt(5.0 + 25.0 / 16.0 * kappa * kappa - mu * mu) +
           1.25 * kappa * kappa - 1.5 * mu * mu;
}

SplittingEstimate splitting_estimate(int n) {
    if (n < 0) throw InvalidArgument("splitting_estimate: n must be >= 0");
    const double s5 = std::sqrt(5.0);
    double c = std::log((s5 + 2.0) * (s5 + 1.0) / 2.0);
    return {c, std::exp(-c * n)};
}

double underbarrier_action(double lambda, double mu, BarrierInterval interval) {
    if (lambda == 0.0) return 0.0;  // the barrier closes exactly on the cone
    auto f = [&](double th) { return f_allowed(th, lambda, mu); };
    numkit::RootOptions ro;
    ro.x_tol = 1e-15;

    // the pole itself is an integrable 1/sqrt endpoint of |L_perp|; the
    // endpoint substitution never samples it exactly
    double lo, hi;
    if (interval == BarrierInterval::inner) {
        if (lambda > 0)
            throw NoBarrier("underbarrier_action: inner barrier requires lambda < 0");
        if (mu >= kInsideMuLimit)
            throw NoBarrier("underbarrier_action: inside region gone at m >= n/sqrt(5)");
        hi = kConeTheta;
        if (lambda <= -1.0 && mu == 0.0) {
            lo = 0.0;  // allowed region has shrunk to the axis
        } else {
            double lo2, hi2;
            try {
                allowed_interval(lambda, mu, Branch::inside_cone, lo2, hi2);
            } catch (const NoRoot&) {
                throw NoBarrier("underbarrier_action: no inside allowed region");
            }
            lo = hi2;
        }
    } else {
        if (lambda < 0)
            throw NoBarrier("underbarrier_action: outer barrier requires lambda > 0");
        lo = kConeTheta;
        if (lambda >= 4.0 * (1.0 - mu * mu)) {
            hi = M_PI / 2;  // allowed region outside has closed
        } else {
            double lo2, hi2;
            allowed_interval(lambda, mu, Branch::outside_cone, lo2, hi2);
            hi = lo2;
        }
    }
    if (hi <= lo)
        throw NoBarrier("underbarrier_action: empty forbidden interval");
    auto integrand = [&](double th) {
        double v = f(th);
        return v < 0 ? std::sqrt(-v) : 0.0;
    };
    numkit::Quadrature q(1e-11, 1e-11, 6000, numkit::EndpointMode::inv_sqrt_both);
    return numkit::integrate(integrand, lo, hi, q);
}

} // namespace semiclassica::zeeman
