#include "lambdasim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lambdasim {

const char* to_string(EquationVariant variant) {
    return variant == EquationVariant::derived ? "derived" : "paper_literal";
}

EquationVariant variant_from_string(const std::string& name) {
    if (name == "derived") return EquationVariant::derived;
    if (name == "paper_literal" || name == "paper-literal")
        return EquationVariant::paper_literal;
    throw validation_error("variant: expected \"derived\" or \"paper_literal\", got \"" + name + "\"");
}

SimulationConfig::SimulationConfig() {
    pulse1.carrier = system.omega31;
    pulse2.carrier = system.omega32();
    const double halfspan = 5.0 * std::max(pulse1.width, pulse2.width);
    t_start = -halfspan;
    t_end = halfspan;
}

namespace {

// Largest |instantaneous frequency| of one pulse over the part of the window
// where its envelope is non-negligible (|t| <= 2 width, i.e. >= e^-4 of peak).
double max_significant_frequency(const ChirpedPulse& pulse, double t_start, double t_end) {
    const double lo = std::max(t_start, -2.0 * pulse.width);
    const double hi = std::min(t_end, 2.0 * pulse.width);
    if (lo > hi) return 0.0;  // pulse center outside the window
    double peak = std::max(std::abs(pulse.instantaneous_frequency(lo)),
                           std::abs(pulse.instantaneous_frequency(hi)));
    if (lo < 0.0 && hi > 0.0)
        peak = std::max(peak, std::abs(pulse.instantaneous_frequency(0.0)));
    return peak;
}

} // namespace

ConfigDiagnostics validate(const SimulationConfig& config) {
    validate(config.system);
    validate(config.pulse1, "pulse1");
    validate(config.pulse2, "pulse2");
    validate(config.basis);
    validate_density_matrix(config.initial_state, "initial_state");

    if (!std::isfinite(config.t_start) || !std::isfinite(config.t_end) ||
        !std::isfinite(config.dt))
        throw validation_error("time: finite t_start, t_end and dt required");
    if (!(config.t_start < config.t_end)) {
        std::ostringstream msg;
        msg << "time: t_start < t_end violated (got [" << config.t_start << ", "
            << config.t_end << "])";
        throw validation_error(msg.str());
    }
    if (!(config.dt > 0.0))
        throw validation_error("time: dt > 0 violated (got " + std::to_string(config.dt) + ")");
    if (!(config.dt < config.t_end - config.t_start))
        throw validation_error("time: dt < (t_end - t_start) violated");
    if ((config.t_end - config.t_start) / config.dt > 1e10)
        throw validation_error("time: (t_end - t_start)/dt exceeds 1e10 steps");
    if (config.record_stride < 1)
        throw validation_error("time: record_stride >= 1 violated (got " +
                               std::to_string(config.record_stride) + ")");

    ConfigDiagnostics diag;
    const double fastest =
        std::max(max_significant_frequency(config.pulse1, config.t_start, config.t_end),
                 max_significant_frequency(config.pulse2, config.t_start, config.t_end));
    diag.max_phase_step_rad = config.dt * fastest;
    diag.step_resolution_warning = diag.max_phase_step_rad > 0.2;
    return diag;
}

TrajectorySample make_sample(double t, const DensityMatrix& rho, const MixingBasis& basis) {
    TrajectorySample s;
    s.t = t;
    s.rho11 = rho(0, 0).real();
    s.rho22 = rho(1, 1).real();
    s.rho33 = rho(2, 2).real();
    const std::complex<double> r21 = rho(1, 0);
    const std::complex<double> r31 = rho(2, 0);
    const std::complex<double> r32 = rho(2, 1);
    s.re_rho21 = r21.real();
    s.im_rho21 = r21.imag();
    s.abs_rho21 = std::abs(r21);
    s.re_rho31 = r31.real();
    s.im_rho31 = r31.imag();
    s.re_rho32 = r32.real();
    s.im_rho32 = r32.imag();
    const DarkBrightPopulations db = dark_bright_populations(rho, basis);
    s.rho_bb = db.bright;
    s.rho_dd = db.dark;
    s.trace_err = trace_error(rho);
    s.purity = purity(rho);
    return s;
}

FinalObservables final_observables(const Trajectory& trajectory) {
    if (trajectory.samples.empty())
        throw validation_error("trajectory: non-empty trajectory required");
    const TrajectorySample& last = trajectory.samples.back();
    FinalObservables out;
    out.abs_rho21 = last.abs_rho21;
    out.re_rho21 = last.re_rho21;
    out.rho11 = last.rho11;
    out.rho22 = last.rho22;
    out.rho33 = last.rho33;
    out.rho_dd = last.rho_dd;
    out.max_rho33 = 0.0;
    for (const TrajectorySample& s : trajectory.samples)
        out.max_rho33 = std::max(out.max_rho33, s.rho33);
    return out;
}

Eigen::Matrix3cd hamiltonian(const SimulationConfig& config, double t) {
    const double rabi31 = config.pulse1.rabi(t);
    const double rabi32 = config.pulse2.rabi(t);
    Eigen::Matrix3cd h = Eigen::Matrix3cd::Zero();
    h(1, 1) = config.system.omega21;
    h(2, 2) = config.system.omega31;
    h(2, 0) = h(0, 2) = -rabi31;
    h(2, 1) = h(1, 2) = -rabi32;
    return h;
}

namespace {

DensityMatrix rhs_derived(double t, const DensityMatrix& rho, const SimulationConfig& config) {
    const Eigen::Matrix3cd h = hamiltonian(config, t);
    const Eigen::Matrix3cd commutator = h * rho - rho * h;
    return std::complex<double>(0.0, -1.0) * commutator;
}

// The six printed equations, taken literally: the rho32 line carries
// (rho33 - rho11). The lower triangle follows by conjugation.
DensityMatrix rhs_paper_literal(double t, const DensityMatrix& rho,
                                const SimulationConfig& config) {
    using cd = std::complex<double>;
    constexpr cd i_unit(0.0, 1.0);
    const double rabi31 = config.pulse1.rabi(t);
    const double rabi32 = config.pulse2.rabi(t);
    const double omega31 = config.system.omega31;
    const double omega21 = config.system.omega21;
    const double omega32 = config.system.omega32();

    const cd r11 = rho(0, 0), r33 = rho(2, 2);
    const cd r21 = rho(1, 0), r31 = rho(2, 0), r32 = rho(2, 1);
    const cd r12 = rho(0, 1), r13 = rho(0, 2), r23 = rho(1, 2);

    const cd d31 = -i_unit * omega31 * r31 + i_unit * rabi32 * r21 - i_unit * rabi31 * (r33 - r11);
    const cd d32 = -i_unit * omega32 * r32 + i_unit * rabi31 * r12 - i_unit * rabi32 * (r33 - r11);
    const cd d21 = -i_unit * omega21 * r21 + i_unit * rabi32 * r31 - i_unit * rabi31 * r23;
    const cd d11 = i_unit * rabi31 * (r31 - r13);
    const cd d22 = i_unit * rabi32 * (r32 - r23);
    const cd d33 = i_unit * rabi31 * (r13 - r31) + i_unit * rabi32 * (r23 - r32);

    DensityMatrix out;
    out(0, 0) = d11;
    out(1, 1) = d22;
    out(2, 2) = d33;
    out(1, 0) = d21;
    out(2, 0) = d31;
    out(2, 1) = d32;
    out(0, 1) = std::conj(d21);
    out(0, 2) = std::conj(d31);
    out(1, 2) = std::conj(d32);
    return out;
}

} // namespace

DensityMatrix bloch_rhs(double t, const DensityMatrix& rho, const SimulationConfig& config) {
    return config.variant == EquationVariant::derived
               ? rhs_derived(t, rho, config)
               : rhs_paper_literal(t, rho, config);
}

namespace {

DensityMatrix rk4_step_raw(double t, const DensityMatrix& rho, double dt,
                           const SimulationConfig& config) {
    const DensityMatrix k1 = bloch_rhs(t, rho, config);
    const DensityMatrix k2 = bloch_rhs(t + 0.5 * dt, rho + (0.5 * dt) * k1, config);
    const DensityMatrix k3 = bloch_rhs(t + 0.5 * dt, rho + (0.5 * dt) * k2, config);
    const DensityMatrix k4 = bloch_rhs(t + dt, rho + dt * k3, config);
    return rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

void accumulate_diagnostics(Trajectory& traj, const DensityMatrix& rho) {
    traj.max_trace_error = std::max(traj.max_trace_error, trace_error(rho));
    traj.min_purity = std::min(traj.min_purity, purity(rho));
}

} // namespace

DensityMatrix rk4_step(double t, const DensityMatrix& rho, double dt,
                       const SimulationConfig& config) {
    return hermitized(rk4_step_raw(t, rho, dt, config));
}

Trajectory integrate(const SimulationConfig& config) {
    validate(config);

    const double span = config.t_end - config.t_start;
    const long long n_steps =
        std::max<long long>(1, static_cast<long long>(std::ceil(span / config.dt - 1e-9)));

    Trajectory traj;
    traj.samples.reserve(static_cast<size_t>(n_steps / config.record_stride) + 2);

    DensityMatrix rho = hermitized(config.initial_state);
    traj.samples.push_back(make_sample(config.t_start, rho, config.basis));
    accumulate_diagnostics(traj, rho);

    for (long long k = 0; k < n_steps; ++k) {
        const double t = config.t_start + static_cast<double>(k) * config.dt;
        const bool last = (k == n_steps - 1);
        const double h = last ? config.t_end - t : config.dt;
        const double t_next = last ? config.t_end
                                   : config.t_start + static_cast<double>(k + 1) * config.dt;

        const DensityMatrix raw = rk4_step_raw(t, rho, h, config);
        traj.max_hermiticity_drift =
            std::max(traj.max_hermiticity_drift, hermiticity_error(raw));
        rho = hermitized(raw);

        const double worst = rho.cwiseAbs().maxCoeff();
        if (!(worst <= 2.0)) {
            std::ostringstream msg;
            msg << "numerical blowup at t = " << t_next << " fs: max |rho_ij| = "
                << worst << " (unstable step size?)";
            throw numeric_error(msg.str());
        }

        accumulate_diagnostics(traj, rho);
        if ((k + 1) % config.record_stride == 0 || last)
            traj.samples.push_back(make_sample(t_next, rho, config.basis));
    }

    return traj;
}

} // namespace lambdasim
