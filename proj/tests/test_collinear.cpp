#include "doctest.h"

#include "semiclassica/helium_collinear.hpp"

#include <cmath>

using namespace semiclassica;
using namespace semiclassica::collinear;

TEST_CASE("frozen planet energies reproduce the printed table") {
    struct Row { int s, k, l; double E; };
    const Row rows[] = {{4, 0, 0, -8.91e-2}, {7, 0, 0, -3.48e-2}, {4, 0, 1, -8.68e-2},
                        {7, 0, 1, -3.42e-2}, {4, 0, 2, -8.45e-2}, {7, 0, 2, -3.36e-2}};
    for (const auto& r : rows) {
        double e = frozen_planet_energy({r.s, r.k, r.l});
        CHECK(std::fabs(e - r.E) < 0.01e-2);
    }
}

TEST_CASE("frozen planet energies increase toward zero with each quantum number") {
    double base = frozen_planet_energy({4, 0, 0});
    CHECK(frozen_planet_energy({5, 0, 0}) > base);
    CHECK(frozen_planet_energy({4, 1, 0}) > base);
    CHECK(frozen_planet_energy({4, 0, 1}) > base);
    CHECK(frozen_planet_energy({4, 0, 0}) < 0);
}

TEST_CASE("fixed point of the section map: elliptic, p1 = 0, area preserving") {
    FixedPoint fp = locate_fixed_point(-1.0, 6.0, 0.0);
    CHECK(std::fabs(fp.p1) < 1e-8);
    CHECK(fp.residual < 1e-8);
    CHECK(fp.jacobian_det == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(fp.eigenvalue_modulus == doctest::Approx(1.0).epsilon(1e-4));
    // the island is the frozen-planet orbit: section rotation number = gamma2
    double tr = fp.jacobian[0] + fp.jacobian[3];
    double gamma = std::acos(tr / 2.0) / (2.0 * M_PI);
    CHECK(gamma == doctest::Approx(FrozenPlanetQN::gamma2).epsilon(2e-3));
}

TEST_CASE("fixed-point orbit action matches the scaled constant at E = -1") {
    FixedPoint fp = locate_fixed_point(-1.0, 6.0, 0.0);
    // action round one section period: integrate p.dq via the section run's
    // time samples is awkward; instead use Kepler-style scaling of the energy:
    // the section map at E and the scaled state at E' coincide after r -> sr,
    // p -> p/sqrt(s), s = E/E'.  Verify with two energies.
    double s = 2.0;  // E' = -0.5
    FixedPoint fp2 = locate_fixed_point(-1.0 / s, s * fp.r1, 0.0);
    CHECK(fp2.r1 == doctest::Approx(s * fp.r1).epsilon(1e-6));
    CHECK(std::fabs(fp2.p1) < 1e-8);
}

TEST_CASE("section iterates stay on an invariant curve near the fixed point") {
    FixedPoint fp = locate_fixed_point(-1.0, 6.0, 0.0);
    SectionRun run = section_run(-1.0, fp.r1 + 0.4, 0.0, 60);
    REQUIRE(int(run.points.size()) == 60);
    double rmin = 1e9, rmax = 0;
    for (const auto& p : run.points) {
        rmin = std::min(rmin, p.r1);
        rmax = std::max(rmax, p.r1);
        CHECK(std::fabs(p.p1) < 0.2);  // bounded libration
    }
    CHECK(rmax - rmin < 1.5);
    CHECK(rmin > fp.r1 - 1.0);
    CHECK(rmax < fp.r1 + 1.0);
}

TEST_CASE("energy conservation along 1000 crossings") {
    FixedPoint fp = locate_fixed_point(-1.0, 6.0, 0.0);
    SectionRun run = section_run(-1.0, fp.r1 + 0.3, 0.0, 1000);
    CHECK(run.max_energy_drift < 1e-8);
}

TEST_CASE("time reversal retraces the section") {
    // forward n crossings from a section point, then integrate backward by
    // reflecting the momenta: the map with p1 -> -p1 must invert the orbit
    SectionRun fwd = section_run(-1.0, 6.3, 0.05, 5);
    const auto& last = fwd.points.back();
    SectionRun back = section_run(-1.0, last.r1, -last.p1, 5);
    // after the same number of crossings we must be back at the start
    CHECK(back.points.back().r1 == doctest::Approx(6.3).epsilon(1e-6));
    CHECK(back.points.back().p1 == doctest::Approx(-0.05).epsilon(2e-5));
}

TEST_CASE("coulomb scaling maps sections onto each other") {
    // states at E and E' relate by r -> (E/E') r, p -> sqrt(E'/E) p
    SectionRun a = section_run(-1.0, 6.5, 0.1, 8);
    double s = -1.0 / -0.5;  // E' = -0.5: s = E/E' = 2
    SectionRun b = section_run(-0.5, s * 6.5, 0.1 / std::sqrt(s), 8);
    for (int i = 0; i < 8; ++i) {
        CHECK(b.points[i].r1 == doctest::Approx(s * a.points[i].r1).epsilon(1e-6));
        CHECK(b.points[i].p1 ==
              doctest::Approx(a.points[i].p1 / std::sqrt(s)).epsilon(1e-4));
    }
}

TEST_CASE("integrate_collinear from a generic interior state") {
    // launch mid-flight (r2 > 0) and require the stated crossing count
    CollinearState s0;
    s0.r1 = 6.0;
    s0.r2 = 1.0;
    s0.p1 = 0.0;
    s0.p2 = 0.0;
    double E = s0.energy();
    REQUIRE(E < 0);
    auto pts = integrate_collinear(s0, 12);
    CHECK(int(pts.size()) == 12);
    for (size_t i = 1; i < pts.size(); ++i) CHECK(pts[i].t > pts[i - 1].t);
}

TEST_CASE("validation and escape detection") {
    CollinearState bad{1.0, 2.0, 0, 0};
    CHECK_THROWS_AS(integrate_collinear(bad, 1), InvalidArgument);
    // hyperbolic outer electron escapes
    CollinearState esc;
    esc.r1 = 30.0;
    esc.r2 = 0.5;
    esc.p1 = 2.0;
    esc.p2 = 0.0;
    CHECK_THROWS_AS(integrate_collinear(esc, 500), semiclassica::NumericalError);
}
