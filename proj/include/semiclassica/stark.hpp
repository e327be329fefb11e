#ifndef SEMICLASSICA_STARK_HPP
#define SEMICLASSICA_STARK_HPP

#include "semiclassica/errors.hpp"

#include <complex>

namespace semiclassica::stark {

/** Broad Stark resonances of hydrogen above the ionization saddle, obtained
    as poles of the periodic-orbit response function.  The bounded parabolic
    degree of freedom supplies a complex action S(E) and instability exponent
    w(E); the pole condition S = (2 n1 + 1) pi hbar + i hbar (n2 + 1/2) w is
    solved by Newton iteration in the complex energy plane. */

using cplx = std::complex<double>;

class TurningPointNotFound : public NumericalError {
public:
    explicit TurningPointNotFound(const std::string& msg) : NumericalError(msg) {}
};
class BranchCut : public NumericalError {
public:
    explicit BranchCut(const std::string& msg) : NumericalError(msg) {}
};
class WrongSheet : public NumericalError {
public:
    explicit WrongSheet(const std::string& msg) : NumericalError(msg) {}
};

struct StarkProblem {
    double F;   ///< field strength, au (> 0)
    int m = 0;  ///< |m| used throughout
    int n1 = 0;
    int n2 = 0;
};

struct ActionData {
    cplx S;       ///< action including the -|m| pi hbar - (i/2)|m| hbar w terms
    cplx w;       ///< instability exponent
    cplx dS_dE;   ///< 2 int u^2/sqrt(...) du (derivative of the integral term)
    cplx u0;      ///< external turning point used for the contour
};

/** Action, instability exponent and period-like derivative at complex energy E
    (Re E > 0).  `hbar` rescales the quantum terms for the width-linearity
    diagnostic; physical results use hbar = 1. */
ActionData action_and_exponent(cplx E, double F, int m, double hbar = 1.0);

struct ComplexResonance {
    cplx E;            ///< complex energy, Im E < 0
    double Gamma;      ///< full width, -2 Im E
    cplx S;            ///< action at the solution
    cplx w;            ///< instability exponent at the solution
    int iterations;
    double residual;   ///< |S - rhs| at the solution
};

/// Real-axis WKB estimate used to seed the Newton iteration.
cplx initial_guess(const StarkProblem& p, double hbar = 1.0);

/// Solve the pole condition from the given guess (see initial_guess).
ComplexResonance solve_resonance(const StarkProblem& p, cplx guess, double hbar = 1.0);

/// Convenience: seed automatically and solve.
ComplexResonance solve_resonance(const StarkProblem& p);

/** Truncated periodic-orbit response sum
    g(E) = -(i T / 2 hbar) sum_n exp{i n [S/hbar - lambda pi/2]} / sinh(n w / 2);
    an independent pole-scan oracle for the resonance positions. */
cplx gutzwiller_response(cplx S, cplx w, cplx T, int lambda, int n_max);

/// Response evaluated directly from (E, F, m).
cplx gutzwiller_response(cplx E, double F, int m, int lambda, int n_max);

} // namespace semiclassica::stark

#endif
