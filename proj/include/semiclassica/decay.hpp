#ifndef SEMICLASSICA_DECAY_HPP
#define SEMICLASSICA_DECAY_HPP

#include "semiclassica/errors.hpp"

#include <vector>

namespace semiclassica::decay {

/** Classical radiative decay of excited hydrogen: bremsstrahlung drains
    energy and angular momentum along the orbit, and the leading-order time
    for the angular momentum to drop by one unit estimates the lifetime. */

class InvalidQN : public InvalidArgument {
public:
    explicit InvalidQN(const std::string& msg) : InvalidArgument(msg) {}
};
class Collapse : public NumericalError {
public:
    explicit Collapse(const std::string& msg) : NumericalError(msg) {}
};

struct DecayState {
    double E;  ///< au, E < 0
    double L;  ///< au, L > 0
};

/// Instantaneous radiative loss rates dE/dt and dL/dt (au).
void loss_rates(const DecayState& s, double& dE_dt, double& dL_dt);

/// Leading-order lifetime (3/2) c^3 n^3 (l+1/2)^2 in au of time.
double lifetime_classical_au(int n, int l);

/** Lifetime in seconds using the rounded prefactor 9.32e-11 s that the
    printed lifetime tables are built from; it agrees with the exact au
    conversion to 0.3% (rounding of the published constant). */
double lifetime_classical(int n, int l);

struct DecayTrajectory {
    double elapsed;                 ///< au time at which Delta L was reached
    std::vector<double> t;
    std::vector<DecayState> states;
};

/// Integrate the loss equations until L has decreased by delta_L.
DecayTrajectory integrate_decay(const DecayState& start, double delta_L);

} // namespace semiclassica::decay

#endif
