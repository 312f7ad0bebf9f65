#include <cmath>
#include <complex>

#include <doctest.h>

#include "lambdasim/dynamics.hpp"
#include "lambdasim/figures.hpp"

using namespace lambdasim;

TEST_CASE("free evolution only rotates phases") {
    SimulationConfig config;
    config.system.omega21 = 0.1;
    config.t_start = 0.0;
    config.t_end = 2.0;
    config.dt = 1e-2;
    config.record_stride = 50;
    Eigen::Vector3cd psi;
    psi << 1.0, 1.0, 0.0;
    config.initial_state = pure_state(psi);

    const Trajectory traj = schrodinger_oracle(config);
    for (const TrajectorySample& s : traj.samples) {
        CHECK(s.rho11 == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(s.rho22 == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(s.rho33 == doctest::Approx(0.0).epsilon(1e-12));
        // rho21 = 0.5 e^{-i omega21 t}: constant H makes the propagator exact.
        const std::complex<double> expected = 0.5 * std::polar(1.0, -0.1 * s.t);
        const std::complex<double> got(s.re_rho21, s.im_rho21);
        CHECK(std::abs(got - expected) <= 1e-12);
    }
}

TEST_CASE("oracle rejects mixed initial states") {
    SimulationConfig config;
    config.t_start = 0.0;
    config.t_end = 1.0;
    config.dt = 1e-2;
    DensityMatrix mixed = DensityMatrix::Zero();
    mixed(0, 0) = 0.5;
    mixed(1, 1) = 0.5;
    config.initial_state = mixed;
    CHECK_THROWS_WITH_AS(schrodinger_oracle(config), doctest::Contains("pure"),
                         validation_error);
}

TEST_CASE("oracle keeps the state normalized over the coherence run") {
    const Trajectory traj = schrodinger_oracle(figures::coherence_run());
    CHECK(traj.max_trace_error <= 1e-10);
    CHECK(std::abs(traj.min_purity - 1.0) <= 1e-10);
}

TEST_CASE("density-matrix integration matches the pure-state propagator") {
    const SimulationConfig config = figures::coherence_run();
    const Trajectory a = integrate(config);
    const Trajectory b = schrodinger_oracle(config);
    REQUIRE(a.samples.size() == b.samples.size());
    double worst = 0.0;
    for (size_t k = 0; k < a.samples.size(); ++k) {
        const TrajectorySample& s = a.samples[k];
        const TrajectorySample& o = b.samples[k];
        CHECK(s.t == o.t);
        for (double d : {s.rho11 - o.rho11, s.rho22 - o.rho22, s.rho33 - o.rho33,
                         s.re_rho21 - o.re_rho21, s.im_rho21 - o.im_rho21,
                         s.re_rho31 - o.re_rho31, s.im_rho31 - o.im_rho31,
                         s.re_rho32 - o.re_rho32, s.im_rho32 - o.im_rho32})
            worst = std::max(worst, std::abs(d));
    }
    CHECK(worst <= 1e-6);
    MESSAGE("max |rho_ij| deviation between solvers: ", worst);
}
