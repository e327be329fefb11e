#ifndef SEMICLASSICA_COLLISIONS_HPP
#define SEMICLASSICA_COLLISIONS_HPP

#include "semiclassica/errors.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace semiclassica::collisions {

// ---------------------------------------------------------------------------
// Electron-impact detachment of a negative ion near threshold
// ---------------------------------------------------------------------------

/** Classical model of a weakly bound s-state: the bound electron oscillates
    along a diameter with amplitude d; detachment costs the binding energy
    eps_b and the classical threshold is sqrt(eps_b/d). */
struct NegativeIonModel {
    double d = 2.7;          ///< oscillation amplitude, au (H-)
    double eps_b = 0.0278;   ///< binding energy, au (H-)
    double threshold() const;  ///< E_th = sqrt(eps_b/d), au
};

/// Escape probability at impact parameter b and projectile energy E (au).
double detachment_probability(double b, double E, const NegativeIonModel& model);

/// Total detachment cross section, au^2 (zero below the classical threshold).
double detachment_cross_section(double E, const NegativeIonModel& model);

/** Monte Carlo cone-geometry oracle: trajectory orientations sampled on the
    half-sphere, the work criterion applied at the closest approach located by
    root finding on the radial turning condition. */
double detachment_cross_section_mc(double E, const NegativeIonModel& model,
                                   int samples, std::uint64_t seed);

struct KapitsaTrajectory {
    double R0;                       ///< distance of closest approach
    std::vector<double> t;           ///< au time, 0 at closest approach
    std::vector<double> R;           ///< smooth projectile distance
    std::vector<double> cos_theta_m; ///< escape-cone opening along the path (<= 1)
};

/// Smooth part of the projectile motion in the averaged (Kapitsa) description.
KapitsaTrajectory kapitsa_trajectory(double E, double b, const NegativeIonModel& model,
                                     int n_samples = 200);

// ---------------------------------------------------------------------------
// Binary encounter approximation
// ---------------------------------------------------------------------------

/** Bound target state (n,l) in a central potential: microcanonical radial
    distribution between the turning points with L = l + 1/2. */
struct BeaTarget {
    std::function<double(double)> V;  ///< central potential, au
    double E_nl;                      ///< level energy, au
    int n = 1;
    int l = 0;
    double Z_t = 1.0;                 ///< nuclear charge when hydrogenic, else 0
    double L() const { return l + 0.5; }

    // derived at construction
    double r1 = 0, r2 = 0;   ///< turning points
    double T_nl = 0;         ///< radial period
    double V_mean = 0;       ///< time-averaged potential energy

    /// Hydrogenic target V = -Z/r with E = -Z^2/2n^2.
    static BeaTarget hydrogenic(double Z, int n, int l);
    /// Generic potential; locates turning points and period numerically.
    static BeaTarget from_potential(std::function<double(double)> V, double E_nl,
                                    int n, int l);

    double p_radial(double r) const;  ///< radial momentum at r
    double v_e(double r) const;       ///< electron speed sqrt(2[E - V])
};

class NoBoundRegion : public NumericalError {
public:
    explicit NoBoundRegion(const std::string& msg) : NumericalError(msg) {}
};
class NotBound : public NumericalError {
public:
    explicit NotBound(const std::string& msg) : NumericalError(msg) {}
};
class NoOverlap : public NumericalError {
public:
    explicit NoOverlap(const std::string& msg) : NumericalError(msg) {}
};

/** Differential two-body cross section for transferring at least eps at fixed
    angle between projectile and electron velocities (step-region area). */
double bea_sigma_differential(double v_p, double v_e, double cos_theta, double eps);

/** Isotropically averaged two-body cross section Sigma(v_p, v_e, eps);
    returns 0 when energy conservation forbids the transfer. */
double bea_sigma_velocity(double v_p, double v_e, double eps);

/// d Sigma / d eps of the averaged two-body cross section (closed form).
double bea_sigma_velocity_deps(double v_p, double v_e, double eps);

/// Cross section for transferring at least eps to the (n,l) electron, au^2.
double bea_cross_section(const BeaTarget& target, double v_p, double eps);

/// Ionization cross section: eps = |E_nl|.
double bea_ionization(const BeaTarget& target, double v_p);

/** High-velocity asymptote 2 pi Z_p^2 [3 eps + 2(E_nl - V_mean)] / (3 v_p^2 eps^2);
    independent of the projectile mass. */
double bea_asymptote(const BeaTarget& target, double v_p, double eps, double Z_p = 1.0);

/// n-changing excitation cross section via the energy-differential form.
double bea_excitation_n(const BeaTarget& initial, const BeaTarget& final_state,
                        double v_p);
/// Hydrogenic convenience overload (builds the final state from Z_t).
double bea_excitation_n(const BeaTarget& initial, double v_p, int n_prime);

/** Angular-momentum transfer density at fixed r and transverse momentum kick:
    lambda(L') = 2 L' / (pi r^2 sqrt[(mu2^2 - dp^2)(dp^2 - mu1^2)]),
    supported on |L - r dp| <= L' <= L + r dp; integrates to one. */
double lprime_distribution(double r, double dp_perp, double L, double Lprime);

struct ExcitationNlOptions {
    int samples = 20000000;
    std::uint64_t seed = 20230517;
    double b_max_factor = 8.0;  ///< safety factor on the maximum impact parameter
    /// Half-widths of the central windows estimating the density d sigma/dn'dl'
    /// at the final quantum cell.  The density varies strongly across a full
    /// unit cell at small Delta n, so the estimate uses a narrow window around
    /// the cell centre (the convention of the closed forms).
    double window_n = 0.2;
    double window_l = 0.2;
};

/** (n,l) -> (n',l') excitation cross section by direct Monte Carlo over the
    microcanonical ensemble and the two-body velocity kick, estimating the
    semiclassical density per unit (n', l') cell at the cell centre. */
double bea_excitation_nl(const BeaTarget& initial, double v_p, int n_prime, int l_prime,
                         const ExcitationNlOptions& opt = ExcitationNlOptions());

/// High-energy closed form for n,n' >> dn, L,L' >> dL (hydrogenic, Z_t = 1).
double bea_excitation_nl_asymptotic(int n, int l, int n_prime, int l_prime, double v_p);

// ---------------------------------------------------------------------------

enum class Abscissa { impact_energy_eV, velocity_au };

struct CrossSectionCurve {
    Abscissa abscissa;
    std::string model;
    std::vector<std::array<double, 3>> rows;  ///< x, sigma (au^2), sigma (cm^2)
};

} // namespace semiclassica::collisions

#endif
