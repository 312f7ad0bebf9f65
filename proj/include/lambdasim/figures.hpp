#ifndef LAMBDASIM_FIGURES_HPP
#define LAMBDASIM_FIGURES_HPP

#include "lambdasim/dynamics.hpp"
#include "lambdasim/sweep.hpp"

namespace lambdasim::figures {

// Maximum-coherence run: Omega10 = 1, Omega20 = 2.4 rad/fs,
// chi1 = chi2 = 0.397 fs^-3, resonant carriers.
SimulationConfig coherence_run();

// Robustness sweep around the coherence point: chi (both pulses) from 0.1 to
// 0.7 fs^-3 by Omega20 from 1.2 to 3.6 rad/fs, 25 x 25, |rho21| at the end.
SweepSpec robustness_sweep();

// Population-transfer run: Omega10 = 1.67, Omega20 = 2.5 rad/fs,
// chi1 = 0.6, chi2 = 0.4 fs^-3.
SimulationConfig transfer_run();

} // namespace lambdasim::figures

#endif
