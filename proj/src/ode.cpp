#include "semiclassica/ode.hpp"
#include "semiclassica/errors.hpp"
#include "semiclassica/root_finding.hpp"

#include <algorithm>
#include <cmath>

namespace semiclassica::numkit {

namespace {

// Dormand-Prince 5(4) tableau
const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
const double a21 = 1.0 / 5;
const double a31 = 3.0 / 40, a32 = 9.0 / 40;
const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
             a54 = -212.0 / 729;
const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
             a64 = 49.0 / 176, a65 = -5103.0 / 18656;
const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
             b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// embedded 4th-order weights
const double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
             e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;
// dense-output coefficients (Shampine's interpolant)
const double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
             d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
             d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

struct StepData {
    double t, h;
    State y0, y1;
    State k1, k3, k4, k5, k6, k7;
};

// 5th-order continuous extension evaluated at t + theta*h
void dense_eval(const StepData& sd, double theta, State& out) {
    const size_t n = sd.y0.size();
    out.resize(n);
    double th = theta, th1 = 1.0 - theta;
    for (size_t i = 0; i < n; ++i) {
        double rcont1 = sd.y0[i];
        double ydiff = sd.y1[i] - sd.y0[i];
        double rcont2 = ydiff;
        double bspl = sd.h * sd.k1[i] - ydiff;
        double rcont3 = bspl;
        double rcont4 = ydiff - sd.h * sd.k7[i] - bspl;
        double rcont5 = sd.h * (d1 * sd.k1[i] + d3 * sd.k3[i] + d4 * sd.k4[i] +
                                d5 * sd.k5[i] + d6 * sd.k6[i] + d7 * sd.k7[i]);
        out[i] = rcont1 + th * (rcont2 + th1 * (rcont3 + th * (rcont4 + th1 * rcont5)));
    }
}

} // namespace

OdeResult integrate_ode(const OdeRhs& rhs, const State& y0, double t0, double t1,
                        const std::vector<EventFn>& events, const OdeSolver& s,
                        bool stop_at_event) {
    const size_t n = y0.size();
    const double dir = (t1 >= t0) ? 1.0 : -1.0;
    const double span = std::fabs(t1 - t0);
    if (span == 0.0) return {{t0}, {y0}, {}};

    OdeResult result;
    State y = y0, k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n);
    double t = t0;
    rhs(t, y, k1);

    double h = s.initial_step > 0 ? s.initial_step : std::min(span * 1e-3, s.max_step);
    h = std::min(h, s.max_step) * dir;

    result.t.push_back(t);
    result.y.push_back(y);

    std::vector<double> gprev(events.size());
    for (size_t i = 0; i < events.size(); ++i) gprev[i] = events[i](t, y);

    StepData sd;
    long steps = 0;
    bool done = false;
    while (!done) {
        if (++steps > s.max_steps)
            throw NonConvergent("integrate_ode: step budget exhausted");
        if (std::fabs(h) < 1e-14 * std::max(1.0, std::fabs(t)))
            throw StepUnderflow("integrate_ode: step size underflow");
        if ((t + h - t1) * dir > 0) {
            h = t1 - t;
            done = true;
        }

        for (size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        rhs(t + c2 * h, ytmp, k2);
        for (size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(t + c3 * h, ytmp, k3);
        for (size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(t + c4 * h, ytmp, k4);
        for (size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(t + c5 * h, ytmp, k5);
        for (size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                  a65 * k5[i]);
        rhs(t + h, ytmp, k6);
        for (size_t i = 0; i < n; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                                  b6 * k6[i]);
        rhs(t + h, ynew, k7);

        double errnorm = 0;
        for (size_t i = 0; i < n; ++i) {
            double e5th = y[i] + h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                      e6 * k6[i] + e7 * k7[i]);
            double sc = s.abs_tol + s.rel_tol * std::max(std::fabs(y[i]), std::fabs(ynew[i]));
            double d = (ynew[i] - e5th) / sc;
            errnorm += d * d;
        }
        errnorm = std::sqrt(errnorm / n);
        // a trial step that wandered into an invalid region is rejected, not fatal
        if (std::isnan(errnorm)) errnorm = 1e10;

        if (errnorm <= 1.0) {  // accept
            sd.t = t; sd.h = h; sd.y0 = y; sd.y1 = ynew;
            sd.k1 = k1; sd.k3 = k3; sd.k4 = k4; sd.k5 = k5; sd.k6 = k6; sd.k7 = k7;

            bool stopped = false;
            if (!events.empty()) {
                State yev(n);
                for (size_t i = 0; i < events.size(); ++i) {
                    double gnew = events[i](t + h, ynew);
                    if (gprev[i] == 0.0) { gprev[i] = gnew; continue; }
                    if ((gprev[i] < 0) != (gnew < 0)) {
                        auto g = [&](double theta) {
                            dense_eval(sd, theta, yev);
                            return events[i](t + theta * h, yev);
                        };
                        RootOptions ro;
                        ro.x_tol = s.event_tol / std::max(std::fabs(h), 1e-300);
                        double theta = find_root(g, 0.0, 1.0, ro);
                        dense_eval(sd, theta, yev);
                        result.events.push_back({static_cast<int>(i), t + theta * h, yev});
                        if (static_cast<int>(result.events.size()) > s.max_events)
                            throw EventOverflow("integrate_ode: too many events");
                        if (stop_at_event) {
                            result.t.push_back(t + theta * h);
                            result.y.push_back(yev);
                            stopped = true;
                        }
                    }
                    gprev[i] = gnew;
                }
            }
            if (stopped) return result;

            t += h;
            y = ynew;
            k1 = k7;  // FSAL
            result.t.push_back(t);
            result.y.push_back(y);
            double fac = 0.9 * std::pow(std::max(errnorm, 1e-10), -0.2);
            h *= std::clamp(fac, 0.2, 5.0);
        } else {
            done = false;
            double fac = 0.9 * std::pow(errnorm, -0.2);
            h *= std::clamp(fac, 0.1, 0.9);
        }
        if (std::fabs(h) > s.max_step) h = dir * s.max_step;
    }
    return result;
}

} // namespace semiclassica::numkit
