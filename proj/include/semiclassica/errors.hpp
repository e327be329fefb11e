#ifndef SEMICLASSICA_ERRORS_HPP
#define SEMICLASSICA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace semiclassica {

/** Base class for all numerical failures raised by the library.
    Specific failure modes derive from it so callers can either catch the
    broad category or a particular condition. */
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// quadrature / root finding
class NonConvergent : public NumericalError {
public:
    explicit NonConvergent(const std::string& msg) : NumericalError(msg) {}
};
class NoSignChange : public NumericalError {
public:
    explicit NoSignChange(const std::string& msg) : NumericalError(msg) {}
};
class Diverged : public NumericalError {
public:
    explicit Diverged(const std::string& msg) : NumericalError(msg) {}
};
class MaxIterations : public NumericalError {
public:
    explicit MaxIterations(const std::string& msg) : NumericalError(msg) {}
};

// ODE integration
class StepUnderflow : public NumericalError {
public:
    explicit StepUnderflow(const std::string& msg) : NumericalError(msg) {}
};
class EventOverflow : public NumericalError {
public:
    explicit EventOverflow(const std::string& msg) : NumericalError(msg) {}
};

class InvalidArgument : public std::invalid_argument {
public:
    explicit InvalidArgument(const std::string& msg) : std::invalid_argument(msg) {}
};

} // namespace semiclassica

#endif
