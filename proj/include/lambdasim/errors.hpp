#ifndef LAMBDASIM_ERRORS_HPP
#define LAMBDASIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lambdasim {

// A configuration or input violates a documented invariant. The message names
// the invariant that failed, e.g. "pulse1: width > 0".
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// The integrator produced a diverging solution (unstable step size).
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace lambdasim

#endif
