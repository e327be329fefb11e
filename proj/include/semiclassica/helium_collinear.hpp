#ifndef SEMICLASSICA_HELIUM_COLLINEAR_HPP
#define SEMICLASSICA_HELIUM_COLLINEAR_HPP

#include "semiclassica/errors.hpp"

#include <array>
#include <vector>

namespace semiclassica::collinear {

/** Two electrons on the same side of a Z = 2 nucleus on a half-line:
    H = p1^2/2 + p2^2/2 - 2/r1 - 2/r2 + 1/(r1 - r2),  r1 > r2 >= 0.
    Inner-electron collisions with the nucleus (r2 = 0) are the Poincare
    section; the flow is integrated in a regularized time in which those
    collisions are analytic. */

class TripleCollision : public NumericalError {
public:
    explicit TripleCollision(const std::string& msg) : NumericalError(msg) {}
};
class Escape : public NumericalError {
public:
    explicit Escape(const std::string& msg) : NumericalError(msg) {}
};
class OrderingViolation : public NumericalError {
public:
    explicit OrderingViolation(const std::string& msg) : NumericalError(msg) {}
};
class NotConverged : public NumericalError {
public:
    explicit NotConverged(const std::string& msg) : NumericalError(msg) {}
};
class HyperbolicDetected : public NumericalError {
public:
    explicit HyperbolicDetected(const std::string& msg) : NumericalError(msg) {}
};

struct CollinearState {
    double r1, r2;  ///< outer/inner positions, r1 > r2 >= 0
    double p1, p2;
    double energy() const;
};

struct SectionPoint {
    double r1, p1;
    int crossing_index;
    double t;  ///< physical time of the crossing
};

/** Integrate from s0 and record (r1, p1) at the next n_crossings passages of
    the inner electron through the nucleus. */
std::vector<SectionPoint> integrate_collinear(const CollinearState& s0, int n_crossings);

/** One application of the section return map at fixed total energy E:
    (r1, p1) at a crossing -> (r1, p1) at the next crossing. */
std::array<double, 2> section_map(double E, double r1, double p1, int iterations = 1);

struct SectionRun {
    std::vector<SectionPoint> points;
    double max_energy_drift;  ///< max |H - E| sampled away from collisions
};

/// Accumulate section points starting from a point on the section itself.
SectionRun section_run(double E, double r1, double p1, int n_crossings);

struct FrozenPlanetQN {
    int s = 0, k = 0, l = 0;
    static constexpr double S_sc = 1.4915;     ///< scaled action of the periodic orbit
    static constexpr double gamma1 = 0.46164;  ///< bending winding number
    static constexpr double gamma2 = 0.06765;  ///< off-collinear winding number
};

/// Closed-form semiclassical energy of the frozen-planet series (au).
double frozen_planet_energy(const FrozenPlanetQN& qn);

struct FixedPoint {
    double r1, p1;
    double residual;          ///< |map(x*) - x*|
    std::array<double, 4> jacobian;  ///< d(map)/d(r1,p1), row-major
    double jacobian_det;
    double eigenvalue_modulus;  ///< |lambda| of the linearized map (elliptic: 1)
};

/** Damped-Newton search for the period-1 elliptic fixed point of the section
    map near the given guess. */
FixedPoint locate_fixed_point(double E, double r1_guess, double p1_guess);

} // namespace semiclassica::collinear

#endif
