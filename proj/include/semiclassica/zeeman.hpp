#ifndef SEMICLASSICA_ZEEMAN_HPP
#define SEMICLASSICA_ZEEMAN_HPP

#include "semiclassica/errors.hpp"
#include "semiclassica/vec3.hpp"

namespace semiclassica::zeeman {

/** Quadratic Zeeman effect within an {n,m} hydrogen manifold.  The secular
    invariant Lambda = 4A^2 - 5A_z^2 separates librations of the Runge-Lenz
    vector inside the double cone cot(theta0) = 2 (Lambda < 0) from librations
    outside it (Lambda > 0); quantizing the theta-motion fixes Lambda and the
    scaled energy shift eps = <rho^2>/n^2 = (1 + mu^2 + Lambda)/2. */

enum class Branch { inside_cone, outside_cone };

class NoRoot : public NumericalError {
public:
    explicit NoRoot(const std::string& msg) : NumericalError(msg) {}
};
class BranchForbidden : public NumericalError {
public:
    explicit BranchForbidden(const std::string& msg) : NumericalError(msg) {}
};
class NoBarrier : public NumericalError {
public:
    explicit NoBarrier(const std::string& msg) : NumericalError(msg) {}
};

struct ManifoldState {
    int n;
    int m;
    Branch branch;
    int index;       ///< s (inside) or k (outside)
    double lambda;   ///< in [-1, 4]
    double epsilon;  ///< scaled shift (1 + mu^2 + lambda)/2
    int parity;      ///< (-1)^k for outside states; 0 for the degenerate inside pair
};

/// Lambda = 4 A^2 - 5 A_z^2 for a Runge-Lenz vector A (|A| <= 1).
double lambda_invariant(const Vec3& A, const Vec3& z_axis);

/// Effective potential of the theta-libration: L_perp = n sqrt(1 - U_eff).
struct EffectivePotential {
    double lambda;
    double mu;
    double u_eff(double theta) const;
    double l_perp_sq_scaled(double theta) const;  ///< (L_perp/n)^2 = 1 - U_eff
};

/** Scaled quantization integral over the classically allowed interval of the
    given branch (the [theta3,theta4] mirror interval when mirrored = true;
    degenerate with the principal one by symmetry). */
double scaled_action(double lambda, double mu, Branch branch, bool mirrored = false);

/// Solve the quantization condition for Lambda and return the manifold state.
ManifoldState quantize_lambda(int n, int m, Branch branch, int index);

/// Harmonic-well approximation of the scaled shift for low-lying states.
double harmonic_shift(int n, int m, Branch branch, int index);

struct SplittingEstimate {
    double exponent_coefficient;  ///< ln[(sqrt5+2)(sqrt5+1)/2] = 1.9248...
    double value;                 ///< exp(-coefficient * n), prefactor not modelled
};

/// Exponential law for the splitting at the first avoided crossing.
SplittingEstimate splitting_estimate(int n);

enum class BarrierInterval { inner, outer };  ///< theta2->theta0 or theta0->theta5

/** 1/n-scaled imaginary action across the classically forbidden interval
    between an allowed region and the cone. */
double underbarrier_action(double lambda, double mu, BarrierInterval interval);

} // namespace semiclassica::zeeman

#endif
