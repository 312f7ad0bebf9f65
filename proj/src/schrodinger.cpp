#include <cmath>
#include <complex>

#include "lambdasim/dynamics.hpp"

namespace lambdasim {

namespace {

// Pulls |psi> out of a pure rho via its dominant eigenvector.
Eigen::Vector3cd state_vector_of(const DensityMatrix& rho) {
    const double p = purity(rho);
    if (std::abs(p - 1.0) > 1e-9)
        throw validation_error(
            "initial_state: pure state (purity = 1) required for the oracle, got purity = " +
            std::to_string(p));
    Eigen::SelfAdjointEigenSolver<DensityMatrix> solver(hermitized(rho));
    return solver.eigenvectors().col(2);  // eigenvalues ascend; col 2 has eigenvalue ~1
}

// exp(-i H h) |psi> with H held constant, via the spectral decomposition.
void advance_constant(const Eigen::Matrix3cd& h_matrix, double h, Eigen::Vector3cd& psi,
                      Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd>& solver) {
    solver.compute(h_matrix);
    const Eigen::Vector3d& omega = solver.eigenvalues();
    const Eigen::Matrix3cd& basis = solver.eigenvectors();
    Eigen::Vector3cd amplitudes = basis.adjoint() * psi;
    for (int k = 0; k < 3; ++k)
        amplitudes(k) *= std::polar(1.0, -omega(k) * h);
    psi = basis * amplitudes;
}

} // namespace

Trajectory schrodinger_oracle(const SimulationConfig& config) {
    validate(config);
    Eigen::Vector3cd psi = state_vector_of(config.initial_state);

    const double span = config.t_end - config.t_start;
    const long long n_steps =
        std::max<long long>(1, static_cast<long long>(std::ceil(span / config.dt - 1e-9)));

    Trajectory traj;
    traj.samples.reserve(static_cast<size_t>(n_steps / config.record_stride) + 2);

    DensityMatrix rho = psi * psi.adjoint();
    traj.samples.push_back(make_sample(config.t_start, rho, config.basis));
    traj.max_trace_error = trace_error(rho);
    traj.min_purity = purity(rho);

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> solver;
    for (long long k = 0; k < n_steps; ++k) {
        const double t = config.t_start + static_cast<double>(k) * config.dt;
        const bool last = (k == n_steps - 1);
        const double h_step = last ? config.t_end - t : config.dt;
        const double t_next = last ? config.t_end
                                   : config.t_start + static_cast<double>(k + 1) * config.dt;

        const double h_sub = h_step / 4.0;
        for (int sub = 0; sub < 4; ++sub) {
            const double t_mid = t + (static_cast<double>(sub) + 0.5) * h_sub;
            advance_constant(hamiltonian(config, t_mid), h_sub, psi, solver);
        }

        if ((k + 1) % config.record_stride == 0 || last) {
            rho = psi * psi.adjoint();
            traj.samples.push_back(make_sample(t_next, rho, config.basis));
            traj.max_trace_error = std::max(traj.max_trace_error, trace_error(rho));
            traj.min_purity = std::min(traj.min_purity, purity(rho));
        }
    }

    return traj;
}

} // namespace lambdasim
