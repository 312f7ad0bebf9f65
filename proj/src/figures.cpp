#include "lambdasim/figures.hpp"

namespace lambdasim::figures {

SimulationConfig coherence_run() {
    SimulationConfig config;  // sodium frame, resonant carriers, +-5 tau window
    config.pulse1.peak_rabi = 1.0;
    config.pulse1.chirp = 0.397;
    config.pulse2.peak_rabi = 2.4;
    config.pulse2.chirp = 0.397;
    return config;
}

SweepSpec robustness_sweep() {
    SweepSpec spec;
    spec.base = coherence_run();
    spec.axis1 = SweepAxis{SweepParameter::chirp_both, 0.1, 0.7, 25};
    spec.axis2 = SweepAxis{SweepParameter::pulse2_peak_rabi, 1.2, 3.6, 25};
    spec.observable = SweepObservable::final_abs_rho21;
    return spec;
}

SimulationConfig transfer_run() {
    SimulationConfig config;
    config.pulse1.peak_rabi = 1.67;
    config.pulse1.chirp = 0.6;
    config.pulse2.peak_rabi = 2.5;
    config.pulse2.chirp = 0.4;
    return config;
}

} // namespace lambdasim::figures
