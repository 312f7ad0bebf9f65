#ifndef LAMBDASIM_DYNAMICS_HPP
#define LAMBDASIM_DYNAMICS_HPP

#include <string>
#include <vector>

#include "lambdasim/core.hpp"

namespace lambdasim {

/// Selects the inversion term of the rho_32 equation. `derived` uses
/// (rho33 - rho22), the commutator of the stated Hamiltonian and the only
/// choice consistent with unitary evolution; `paper_literal` keeps
/// (rho33 - rho11) as printed in the source equations, retained for
/// comparison runs.
enum class EquationVariant { derived, paper_literal };

const char* to_string(EquationVariant variant);
EquationVariant variant_from_string(const std::string& name);

struct SimulationConfig {
    LambdaSystem system{};
    ChirpedPulse pulse1{};  // couples |3> <-> |1>
    ChirpedPulse pulse2{};  // couples |3> <-> |2>
    double t_start = 0.0;
    double t_end = 0.0;
    double dt = 5e-4;            // fs
    int record_stride = 20;      // record every k-th step
    DensityMatrix initial_state = ground_state();
    EquationVariant variant = EquationVariant::derived;
    MixingBasis basis{};

    // Default frame: the sodium-like parameter set with resonant carriers
    // (carrier1 = omega31, carrier2 = omega32), zero drive amplitude, and a
    // +-5 tau window.
    SimulationConfig();
};

struct ConfigDiagnostics {
    // dt times the largest |instantaneous frequency| where the field is
    // non-negligible (|t| <= 2 width, clipped to the window).
    double max_phase_step_rad = 0.0;
    bool step_resolution_warning = false;  // max_phase_step_rad > 0.2
};

// Throws validation_error on any invariant violation. A dt too coarse for the
// chirped oscillation is reported as a warning in the result, not an error.
ConfigDiagnostics validate(const SimulationConfig& config);

struct TrajectorySample {
    double t = 0.0;
    double rho11 = 0.0, rho22 = 0.0, rho33 = 0.0;
    double re_rho21 = 0.0, im_rho21 = 0.0, abs_rho21 = 0.0;
    double re_rho31 = 0.0, im_rho31 = 0.0;
    double re_rho32 = 0.0, im_rho32 = 0.0;
    double rho_bb = 0.0, rho_dd = 0.0;
    double trace_err = 0.0;
    double purity = 1.0;
};

TrajectorySample make_sample(double t, const DensityMatrix& rho, const MixingBasis& basis);

/// Time-ordered observables of one integration, plus whole-run diagnostics
/// accumulated over every step (not just the recorded ones).
struct Trajectory {
    std::vector<TrajectorySample> samples;
    double max_trace_error = 0.0;
    double min_purity = 1.0;
    // Hermiticity drift of the raw integrator output, measured each step
    // before re-hermitization.
    double max_hermiticity_drift = 0.0;
};

struct FinalObservables {
    double abs_rho21 = 0.0;
    double re_rho21 = 0.0;
    double rho11 = 0.0;
    double rho22 = 0.0;
    double rho33 = 0.0;
    double rho_dd = 0.0;
    double max_rho33 = 0.0;  // over all samples
};

// Throws validation_error on an empty trajectory.
FinalObservables final_observables(const Trajectory& trajectory);

// H(t)/hbar in rad/fs: diag(0, omega21, omega31) minus the two dipole
// couplings with their full oscillating Rabi frequencies.
Eigen::Matrix3cd hamiltonian(const SimulationConfig& config, double t);

// d(rho)/dt at time t for the configured equation variant.
DensityMatrix bloch_rhs(double t, const DensityMatrix& rho, const SimulationConfig& config);

// One classic RK4 step of size dt (sign-agnostic), fields evaluated at the
// stage times; the result is re-hermitized.
DensityMatrix rk4_step(double t, const DensityMatrix& rho, double dt,
                       const SimulationConfig& config);

// Fixed-step RK4 march from t_start to t_end. The final sample lands exactly
// on t_end (the last step is shortened when the span is not a multiple of dt).
// Throws numeric_error if any |rho_ij| exceeds 2.
Trajectory integrate(const SimulationConfig& config);

// Independent check path: propagates a pure state under the same H(t) with
// piecewise-constant matrix exponentials on substeps of dt/4 and emits the
// same trajectory schema. Requires a pure initial state.
Trajectory schrodinger_oracle(const SimulationConfig& config);

} // namespace lambdasim

#endif
