#ifndef SEMICLASSICA_CROSSED_FIELDS_HPP
#define SEMICLASSICA_CROSSED_FIELDS_HPP

#include "semiclassica/errors.hpp"
#include "semiclassica/vec3.hpp"

#include <cstdint>
#include <vector>

namespace semiclassica::fields {

/** Hydrogen in weak uniform electric and magnetic fields.  First order of
    secular perturbation theory reduces the orbit-averaged motion to two
    pseudo-spins J1,2 = (L +- nA)/2 precessing about the fixed axes
    B~1,2 = B +- 3cnF, and adiabatic switching carries a trajectory quantized
    in the Kepler limit to full field strength.

    Conventions: the electron equation of motion is
      d2r/dt2 + r/r^3 = -lambda [F + (v x B)/c] + (dlambda/dt) [B x r]/(2c),
    the recorded energy is E = v^2/2 - 1/r + lambda (F.r), and A denotes the
    orbit's aphelion-pointing eccentricity vector (<r> = +(3/2) n^2 A), which
    makes the printed pseudo-spin algebra exact for this force convention. */

class InvalidProjection : public InvalidArgument {
public:
    explicit InvalidProjection(const std::string& msg) : InvalidArgument(msg) {}
};
class Ionized : public NumericalError {
public:
    explicit Ionized(const std::string& msg) : NumericalError(msg) {}
};

struct FieldConfig {
    Vec3 F;        ///< electric field, au
    Vec3 B;        ///< magnetic field, au
    int n = 1;     ///< principal quantum number
    double n1 = 0; ///< pseudo-spin projections, in {-j..j}, j = (n-1)/2
    double n2 = 0;

    double j() const { return 0.5 * (n - 1); }
    void validate() const;
};

struct PseudoSpinFrequencies {
    double omega1, omega2;  ///< precession frequencies |B~|/2c
    Vec3 Btilde1, Btilde2;  ///< effective axes B +- 3cnF
};

/// Effective electric field [P x B]/(M c) seen by the moving two-body system.
Vec3 effective_field(const Vec3& P, const Vec3& B, double M);

PseudoSpinFrequencies pseudo_spin_frequencies(const FieldConfig& cfg);

/// First-order manifold energy shift omega1 n1 + omega2 n2 (au).
double first_order_energy(const FieldConfig& cfg);

/// Secular flow of the pseudo-spins (used by the averaged-dynamics tests).
void pseudo_spin_rhs(const FieldConfig& cfg, const Vec3& J1, const Vec3& J2,
                     Vec3& dJ1, Vec3& dJ2);

struct KeplerElement {
    Vec3 L;               ///< angular momentum
    Vec3 A;               ///< eccentricity vector (aphelion-pointing), |A| = e
    double n;             ///< effective principal quantum number
    double kepler_anomaly;///< eccentric anomaly of the returned phase point
    double perihelion_time;
};

struct QuantizedState {
    KeplerElement element;
    Vec3 r, v;
    Vec3 J1, J2;
};

/** Deterministically seeded phase-space point on the manifold orbit defined
    by the projections (n1, n2); satisfies H0 = -1/(2n^2) exactly. */
QuantizedState quantized_initial_conditions(const FieldConfig& cfg,
                                            std::uint64_t phase_seed);

enum class Ramp { linear, smoothstep };

struct SwitchingParams {
    double rate = 2.5e-5;       ///< d lambda/dt, au
    Ramp ramp = Ramp::linear;
    double r_ion_factor = 50.0; ///< ionization radius r_ion = factor * n^2
    bool include_gauge_force = true;  ///< the (dlambda/dt) A/c term
    int max_samples = 4000;
    double abs_tol = 1e-12;
    double rel_tol = 1e-11;
};

struct SwitchingSample {
    double t, lambda;
    Vec3 r, v;
    double energy;  ///< v^2/2 - 1/r + lambda F.r
};

struct SwitchingRun {
    std::vector<SwitchingSample> samples;
    bool ionized = false;
    double lambda_at_ionization = 0;
    double final_energy = 0;   ///< E at lambda = 1 (or at ionization)
};

/// Ramp the fields from 0 to full strength along a quantized trajectory.
SwitchingRun adiabatic_switch(const FieldConfig& cfg, const QuantizedState& init,
                              const SwitchingParams& run = SwitchingParams());

} // namespace semiclassica::fields

#endif
