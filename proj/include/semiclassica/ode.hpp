#ifndef SEMICLASSICA_ODE_HPP
#define SEMICLASSICA_ODE_HPP

#include <functional>
#include <vector>

namespace semiclassica::numkit {

using State = std::vector<double>;
using OdeRhs = std::function<void(double t, const State& y, State& dydt)>;
using EventFn = std::function<double(double t, const State& y)>;

struct OdeSolver {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    double max_step = 1e30;     ///< au time
    double event_tol = 1e-12;
    double initial_step = 0.0;  ///< 0 = automatic
    int max_events = 100000;
    long max_steps = 50000000;
};

struct EventRecord {
    int index;     ///< which event function fired
    double t;
    State y;
};

struct OdeResult {
    std::vector<double> t;      ///< accepted step times
    std::vector<State> y;       ///< states at those times
    std::vector<EventRecord> events;
};

/** Adaptive embedded Dormand-Prince 5(4) integration with dense output
    for event localisation.  Events are scalar functions whose sign changes
    are located to event_tol.  Set `stop_at_event` to halt on the first
    triggering of any event. */
OdeResult integrate_ode(const OdeRhs& rhs, const State& y0, double t0, double t1,
                        const std::vector<EventFn>& events = {},
                        const OdeSolver& s = OdeSolver(),
                        bool stop_at_event = false);

} // namespace semiclassica::numkit

#endif
