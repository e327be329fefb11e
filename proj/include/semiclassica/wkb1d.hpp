#ifndef SEMICLASSICA_WKB1D_HPP
#define SEMICLASSICA_WKB1D_HPP

#include "semiclassica/quadrature.hpp"
#include "semiclassica/errors.hpp"

#include <functional>
#include <vector>

namespace semiclassica::wkb1d {

/** Phase correction contributed by a caustic in the quantization condition:
    an ordinary turning point gives 1/4, a Coulomb singularity -1/4, uniform
    rotation 0, and the caustic on the polar axis acts like a turning point. */
enum class CausticKind { turning_point, coulomb_singularity, rotation, z_axis_caustic };

double morse_index(CausticKind kind);

/** Effective angular momentum entering the radial motion: L = l + 1/2 for
    l >= 1 and L = 0 for l = 0 (the s-wave lies outside the validity of the
    Langer form and the quantum value must be used). */
double angular_momentum_of(int l, int m);

/// Polar turning points of the theta-oscillation, arcsin(|m|/L) and pi - arcsin(|m|/L).
void polar_turning_points(int l, int m, double& theta1, double& theta2);

struct RadialProblem {
    std::function<double(double)> potential;  ///< V(r), au
    double mass = 1.0;
    int l = 0;
    int m = 0;
    CausticKind inner_caustic = CausticKind::turning_point;
};

struct SpectrumEntry {
    int n_r;
    int l;
    int m;
    double energy;           ///< au
    double action_residual;  ///< quantization residual at the root
};

class NoBoundState : public NumericalError {
public:
    explicit NoBoundState(const std::string& msg) : NumericalError(msg) {}
};
class BracketTooNarrow : public NumericalError {
public:
    explicit BracketTooNarrow(const std::string& msg) : NumericalError(msg) {}
};
class DegenerateTurningPoints : public NumericalError {
public:
    explicit DegenerateTurningPoints(const std::string& msg) : NumericalError(msg) {}
};

/** Radial action integral of sqrt(2m[E - V - L^2/2mr^2]) between the inner
    and outer turning points at energy E. */
double radial_action(const RadialProblem& p, double E);

/** Solve the radial quantization condition for n_r = 0..n_r_max inside the
    energy bracket.  The right-hand side is pi*(n_r + a1 + a2 + 1/2) with the
    Morse indices of the two caustics; a Coulomb inner caustic with l = 0
    cancels the outer turning-point phase and the series starts at n_r = 1. */
std::vector<SpectrumEntry> radial_spectrum(const RadialProblem& p, int n_r_max,
                                           double E_lo, double E_hi);

} // namespace semiclassica::wkb1d

#endif
