#ifndef LAMBDASIM_SELFTEST_HPP
#define LAMBDASIM_SELFTEST_HPP

#include <ostream>

namespace lambdasim {

// Runs the physics validity checks (field bounds, conservation laws, solver
// order, oracle agreement) and prints one pass/fail line per check.
// Returns true when every check passes.
bool run_selftests(std::ostream& out);

} // namespace lambdasim

#endif
