#ifndef SEMICLASSICA_HELIUM_PT_HPP
#define SEMICLASSICA_HELIUM_PT_HPP

#include "semiclassica/errors.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace semiclassica::heliumpt {

/** Classical secular perturbation theory for two equivalent electrons with
    zero total angular momentum.  Both electrons move on congruent coplanar
    Kepler ellipses (L1 = -L2, equal periods); averaging the repulsion over
    both orbits gives an effective Hamiltonian v(nu, chi) in the scaled
    angular momentum nu = L/n and the half-angle chi = (pi - theta)/2 of the
    mutual perihelion orientation.  Level sets of v are the secular
    trajectories; quantizing the chi-libration fixes w = v on the trajectory
    and the first-order energy E1 = (Z/n^2) w(q), q = (2k+1)/2n. */

class OrbitCollision : public NumericalError {
public:
    explicit OrbitCollision(const std::string& msg) : NumericalError(msg) {}
};
class EmptyContour : public NumericalError {
public:
    explicit EmptyContour(const std::string& msg) : NumericalError(msg) {}
};
class NoRoot : public NumericalError {
public:
    explicit NoRoot(const std::string& msg) : NumericalError(msg) {}
};

struct EquivalentPair {
    double Z = 2.0;
    int n = 1;
    double nu = 0.5;     ///< L/n in [0, 1)
    double theta = M_PI; ///< mutual perihelion angle (sign-symmetric)
    double chi() const {
        double t = std::fabs(std::remainder(theta, 2.0 * M_PI));
        return 0.5 * (M_PI - t);
    }
};

/// Electron-electron distance on unit-semiaxis orbits at anomalies (xi1, xi2).
double ellipse_separation(double nu, double chi, double xi1, double xi2);

/** Scaled effective Hamiltonian v(nu, chi): the double orbit average of the
    repulsion on unit-semiaxis orbits.  Throws OrbitCollision when the two
    orbit curves (nearly) coincide -- chi at pi/2 (aligned ellipses) or nu at 1
    (congruent circles) -- where the average diverges logarithmically. */
double scaled_interaction(double nu, double chi, double rel_tol = 1e-5);

/// Double orbit average of 1/|r1 - r2| in au; equals (Z/n^2) v(nu, chi).
double double_average(const EquivalentPair& pair, double rel_tol = 1e-5);

/** Tabulated v(nu, chi) with bicubic interpolation.  The default mesh spans
    nu in [0, 0.99] and chi in [0, pi/2 - 0.02]; the excluded strips guard the
    logarithmic divergences at coinciding orbits. */
struct EffectiveHamiltonianGrid {
    std::vector<double> nu_axis;
    std::vector<double> chi_axis;
    std::vector<double> v;  ///< row-major: v[i_nu * chi_axis.size() + i_chi]
    double quad_tol = 1e-4;

    double value(double nu, double chi) const;
    double nu_max() const { return nu_axis.back(); }
    double chi_max() const { return chi_axis.back(); }

    static EffectiveHamiltonianGrid build(int n_nu = 61, int n_chi = 61,
                                          double nu_max = 0.99,
                                          double chi_max = M_PI / 2 - 0.02,
                                          double quad_tol = 1e-4, int threads = 0);
    void save_csv(const std::string& path) const;
    static EffectiveHamiltonianGrid load_csv(const std::string& path);
    std::string cache_key() const;
};

struct Contour {
    std::vector<double> chi;
    std::vector<double> nu;
    double chi_m;  ///< turning point: nu(chi_m) = 0
};

/// Level set nu(chi) of v = w, from chi = 0 out to the turning point.
Contour contour_nu_of_chi(double w, const EffectiveHamiltonianGrid& grid,
                          int n_points = 64);

struct QuantizedLevel {
    double q;
    double w;
    double chi_m;
};

/** Solve int_0^{chi_m} nu(chi) d chi = (pi/2) q for w with q = (2k+1)/2n.
    Throws NoRoot when q lies outside the range reachable before the turning
    point merges with the singular line chi = pi/2 (the q -> 1 regime needs a
    modified quantization condition that is out of scope). */
QuantizedLevel quantize_w(int n, int k, const EffectiveHamiltonianGrid& grid);

/// First-order energy correction E1 = (Z/n^2) w(q) in au.
double first_order_energy(double Z, int n, int k, const EffectiveHamiltonianGrid& grid);

} // namespace semiclassica::heliumpt

#endif
