#include "lambdasim/selftest.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "lambdasim/dynamics.hpp"
#include "lambdasim/figures.hpp"

namespace lambdasim {

namespace {

std::string num(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", value);
    return buf;
}

struct Reporter {
    std::ostream& out;
    bool all_ok = true;

    void check(bool ok, const std::string& name, const std::string& detail) {
        out << (ok ? "[PASS] " : "[FAIL] ") << name << ": " << detail << "\n";
        all_ok = all_ok && ok;
    }
};

DensityMatrix random_density_matrix(std::mt19937& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::Matrix3cd a;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            a(i, j) = std::complex<double>(gauss(rng), gauss(rng));
    DensityMatrix rho = a * a.adjoint();
    return rho / rho.trace().real();
}

void check_pulse_bounds(Reporter& rep, std::mt19937& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double worst_excess = 0.0;
    double tail = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        ChirpedPulse pulse;
        pulse.peak_rabi = 3.0 * uni(rng);
        pulse.width = 0.5 + 8.0 * uni(rng);
        pulse.carrier = 5.0 * uni(rng);
        pulse.chirp = (uni(rng) - 0.5);
        for (int k = 0; k <= 400; ++k) {
            const double t = -6.0 * pulse.width + 12.0 * pulse.width * k / 400.0;
            worst_excess = std::max(worst_excess, std::abs(pulse.rabi(t)) - pulse.peak_rabi);
        }
        if (pulse.peak_rabi > 0.0) {
            const double edge = std::abs(pulse.rabi(5.0 * pulse.width)) / pulse.peak_rabi;
            tail = std::max(tail, edge);
        }
    }
    rep.check(worst_excess <= 1e-12, "pulse amplitude bound",
              "max |Omega(t)| - peak over random pulses = " + num(worst_excess));
    rep.check(tail < 2e-11, "pulse tail at 5 widths",
              "envelope fraction = " + num(tail));
}

void check_dark_bright(Reporter& rep, std::mt19937& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const DensityMatrix rho = random_density_matrix(rng);
        const MixingBasis basis{0.5 * constants::pi * uni(rng)};
        const DarkBrightPopulations db = dark_bright_populations(rho, basis);
        const double sum_err =
            std::abs(db.bright + db.dark - rho(0, 0).real() - rho(1, 1).real());
        worst = std::max(worst, sum_err);
    }
    rep.check(worst <= 1e-12, "dark/bright subspace conservation",
              "max |rho_BB + rho_DD - rho11 - rho22| = " + num(worst));
}

void check_rhs_structure(Reporter& rep, std::mt19937& rng) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    SimulationConfig config = figures::coherence_run();
    double worst_trace = 0.0;
    double worst_herm = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const DensityMatrix rho = random_density_matrix(rng);
        const double t = 15.0 * uni(rng);
        const DensityMatrix drho = bloch_rhs(t, rho, config);
        worst_trace = std::max(worst_trace, std::abs(drho.trace()));
        worst_herm = std::max(worst_herm, hermiticity_error(drho));
    }
    rep.check(worst_trace <= 1e-12 && worst_herm <= 1e-12,
              "equation structure (derived)",
              "max |tr d(rho)/dt| = " + num(worst_trace) +
                  ", max hermiticity defect = " + num(worst_herm));
}

void check_rk4_local_order(Reporter& rep) {
    const SimulationConfig config = figures::coherence_run();
    const DensityMatrix rho = ground_state();
    auto richardson = [&](double dt) {
        const DensityMatrix one = rk4_step(0.0, rho, dt, config);
        DensityMatrix two = rk4_step(0.0, rho, 0.5 * dt, config);
        two = rk4_step(0.5 * dt, two, 0.5 * dt, config);
        return (one - two).cwiseAbs().maxCoeff();
    };
    const double coarse = richardson(0.01);
    const double fine = richardson(0.005);
    const double ratio = coarse / fine;
    rep.check(ratio > 20.0 && ratio < 48.0, "rk4 local truncation order",
              "halving dt shrinks the Richardson defect by " + num(ratio) +
                  " (expect ~32)");
}

void check_free_evolution(Reporter& rep) {
    SimulationConfig config;
    config.system.omega21 = 0.1;
    config.pulse1.peak_rabi = 0.0;
    config.pulse2.peak_rabi = 0.0;
    DensityMatrix rho = DensityMatrix::Zero();
    rho(0, 0) = 0.5;
    rho(1, 1) = 0.5;
    rho(1, 0) = 0.5;
    rho(0, 1) = 0.5;
    config.initial_state = rho;
    config.t_start = 0.0;
    config.t_end = 1.0;
    config.dt = 1e-3;
    const Trajectory traj = integrate(config);
    const TrajectorySample& last = traj.samples.back();
    const std::complex<double> expected =
        0.5 * std::polar(1.0, -config.system.omega21 * 1.0);
    const double err = std::abs(std::complex<double>(last.re_rho21, last.im_rho21) - expected);
    rep.check(err <= 1e-10, "free coherence phase",
              "|rho21(1 fs) - closed form| = " + num(err));
}

void check_conservation_and_oracle(Reporter& rep) {
    const SimulationConfig config = figures::coherence_run();
    const Trajectory traj = integrate(config);
    rep.check(traj.max_trace_error <= 1e-9, "trace conservation",
              "max |tr rho - 1| = " + num(traj.max_trace_error));
    rep.check(traj.max_hermiticity_drift <= 1e-12, "hermiticity",
              "max per-step drift = " + num(traj.max_hermiticity_drift));
    rep.check(std::abs(traj.min_purity - 1.0) <= 1e-6, "purity conservation",
              "max |tr rho^2 - 1| = " + num(std::abs(traj.min_purity - 1.0)));

    const Trajectory oracle = schrodinger_oracle(config);
    double worst = 0.0;
    const size_t n = std::min(traj.samples.size(), oracle.samples.size());
    for (size_t k = 0; k < n; ++k) {
        const TrajectorySample& a = traj.samples[k];
        const TrajectorySample& b = oracle.samples[k];
        for (double d : {a.rho11 - b.rho11, a.rho22 - b.rho22, a.rho33 - b.rho33,
                         a.re_rho21 - b.re_rho21, a.im_rho21 - b.im_rho21,
                         a.re_rho31 - b.re_rho31, a.im_rho31 - b.im_rho31,
                         a.re_rho32 - b.re_rho32, a.im_rho32 - b.im_rho32})
            worst = std::max(worst, std::abs(d));
    }
    rep.check(traj.samples.size() == oracle.samples.size() && worst <= 1e-6,
              "independent propagator agreement",
              "max |rho_ij| difference over " + std::to_string(n) + " samples = " +
                  num(worst));
}

} // namespace

bool run_selftests(std::ostream& out) {
    std::mt19937 rng(20260810u);
    Reporter rep{out};
    check_pulse_bounds(rep, rng);
    check_dark_bright(rep, rng);
    check_rhs_structure(rep, rng);
    check_rk4_local_order(rep);
    check_free_evolution(rep);
    check_conservation_and_oracle(rep);
    out << (rep.all_ok ? "all checks passed\n" : "CHECKS FAILED\n");
    return rep.all_ok;
}

} // namespace lambdasim
