#include <cmath>
#include <cstdlib>
#include <cstring>

#include <doctest.h>

#include "lambdasim/sweep.hpp"

using namespace lambdasim;

namespace {

// Small, fast base config for grid mechanics tests.
SimulationConfig small_base() {
    SimulationConfig config;
    config.pulse1 = ChirpedPulse{0.8, 1.0, 3.18, 0.2};
    config.pulse2 = ChirpedPulse{1.6, 1.0, config.system.omega32(), 0.2};
    config.t_start = -5.0;
    config.t_end = 5.0;
    config.dt = 2e-3;
    config.record_stride = 50;
    return config;
}

SweepSpec small_spec(int count1 = 3, int count2 = 3) {
    SweepSpec spec;
    spec.base = small_base();
    spec.axis1 = SweepAxis{SweepParameter::chirp_both, 0.1, 0.5, count1};
    spec.axis2 = SweepAxis{SweepParameter::pulse2_peak_rabi, 1.0, 3.0, count2};
    spec.observable = SweepObservable::final_abs_rho21;
    return spec;
}

bool bitwise_equal(const SweepResult& a, const SweepResult& b) {
    if (a.cells.size() != b.cells.size()) return false;
    for (size_t k = 0; k < a.cells.size(); ++k) {
        if (std::memcmp(&a.cells[k].param1, &b.cells[k].param1, sizeof(double)) != 0) return false;
        if (std::memcmp(&a.cells[k].param2, &b.cells[k].param2, sizeof(double)) != 0) return false;
        if (std::memcmp(&a.cells[k].value, &b.cells[k].value, sizeof(double)) != 0) return false;
        if (a.cells[k].ok != b.cells[k].ok) return false;
    }
    return true;
}

} // namespace

TEST_CASE("a 1x1 grid reproduces the base run exactly") {
    SweepSpec spec = small_spec(1, 1);
    spec.axis1 = SweepAxis{SweepParameter::chirp_both, 0.2, 0.2, 1};
    spec.axis2 = SweepAxis{SweepParameter::pulse2_peak_rabi, 1.6, 1.6, 1};

    const SweepResult result = run_sweep(spec, 1);
    REQUIRE(result.cells.size() == 1);
    CHECK(result.cells[0].ok);

    const FinalObservables fin = final_observables(integrate(spec.base));
    CHECK(result.cells[0].value == fin.abs_rho21);
    CHECK(result.cells[0].param1 == 0.2);
    CHECK(result.cells[0].param2 == 1.6);
}

TEST_CASE("cells are ordered row-major over axis1 then axis2") {
    const SweepSpec spec = small_spec(2, 3);
    const SweepResult result = run_sweep(spec, 2);
    REQUIRE(result.cells.size() == 6);
    int idx = 0;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 3; ++j, ++idx) {
            CHECK(result.cells[idx].param1 == spec.axis1.value_at(i));
            CHECK(result.cells[idx].param2 == spec.axis2.value_at(j));
            CHECK(&result.at(i, j) == &result.cells[idx]);
        }
    }
}

TEST_CASE("worker count never changes the result") {
    const SweepSpec spec = small_spec();
    const SweepResult serial = run_sweep(spec, 1);
    const SweepResult parallel = run_sweep(spec, 4);
    const SweepResult again = run_sweep(spec, 4);
    CHECK(bitwise_equal(serial, parallel));
    CHECK(bitwise_equal(parallel, again));
}

TEST_CASE("grid refinement preserves coinciding coordinates and values") {
    const SweepSpec coarse = small_spec(3, 3);
    SweepSpec fine = coarse;
    fine.axis1.count = 5;
    fine.axis2.count = 5;

    for (int i = 0; i < 3; ++i)
        CHECK(coarse.axis1.value_at(i) == fine.axis1.value_at(2 * i));

    const SweepResult rc = run_sweep(coarse, 2);
    const SweepResult rf = run_sweep(fine, 2);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(rc.at(i, j).value == rf.at(2 * i, 2 * j).value);
}

TEST_CASE("observables stay within [0, 1]") {
    for (SweepObservable obs : {SweepObservable::final_abs_rho21, SweepObservable::final_rho22,
                                 SweepObservable::final_rho_dd, SweepObservable::max_rho33}) {
        SweepSpec spec = small_spec(2, 2);
        spec.observable = obs;
        const SweepResult result = run_sweep(spec, 2);
        for (const SweepCell& cell : result.cells) {
            REQUIRE(cell.ok);
            CHECK(cell.value >= -1e-9);
            CHECK(cell.value <= 1.0 + 1e-9);
            CHECK(cell.trace_error_max <= 1e-9);
        }
    }
}

TEST_CASE("invalid cells are flagged instead of aborting the sweep") {
    SweepSpec spec = small_spec(3, 2);
    spec.axis1 = SweepAxis{SweepParameter::pulse1_width, -1.0, 1.0, 3};  // -1, 0 invalid
    const SweepResult result = run_sweep(spec, 2);
    REQUIRE(result.cells.size() == 6);
    CHECK(result.failed_count() == 4);
    for (int j = 0; j < 2; ++j) {
        CHECK_FALSE(result.at(0, j).ok);
        CHECK(result.at(0, j).error.find("width > 0") != std::string::npos);
        CHECK(std::isnan(result.at(0, j).value));
        CHECK_FALSE(result.at(1, j).ok);
        CHECK(result.at(2, j).ok);
    }
}

TEST_CASE("sweep spec invariants are enforced") {
    SweepSpec spec = small_spec();
    spec.axis1.count = 0;
    CHECK_THROWS_WITH_AS(validate(spec), doctest::Contains("count >= 1"), validation_error);
    spec = small_spec();
    spec.axis2.min = 2.0;
    spec.axis2.max = 1.0;
    CHECK_THROWS_WITH_AS(validate(spec), doctest::Contains("min <= max"), validation_error);
}

TEST_CASE("chirp_both moves both pulses together") {
    SimulationConfig config = small_base();
    apply_parameter(config, SweepParameter::chirp_both, 0.33);
    CHECK(config.pulse1.chirp == 0.33);
    CHECK(config.pulse2.chirp == 0.33);
    apply_parameter(config, SweepParameter::pulse1_peak_rabi, 1.9);
    CHECK(config.pulse1.peak_rabi == 1.9);
    CHECK(config.pulse2.peak_rabi == 1.6);
}

TEST_CASE("worker count defaults honor the environment override") {
    ::setenv("LAMBDASIM_WORKERS", "3", 1);
    CHECK(default_worker_count() == 3);
    ::setenv("LAMBDASIM_WORKERS", "not-a-number", 1);
    CHECK(default_worker_count() >= 1);
    ::setenv("LAMBDASIM_WORKERS", "-2", 1);
    CHECK(default_worker_count() >= 1);
    ::unsetenv("LAMBDASIM_WORKERS");
    CHECK(default_worker_count() >= 1);
}

TEST_CASE("plateau summary: trivial thresholds") {
    const SweepResult result = run_sweep(small_spec(3, 3), 2);

    const PlateauSummary all = plateau_summary(result, 0.0);
    CHECK(all.cells_at_or_above == 9);
    CHECK(all.fraction == 1.0);
    CHECK_FALSE(all.empty);
    CHECK(all.region_cells == 9);
    CHECK(all.i_min == 0);
    CHECK(all.i_max == 2);
    CHECK(all.j_min == 0);
    CHECK(all.j_max == 2);

    const PlateauSummary none = plateau_summary(result, 1.01);
    CHECK(none.cells_at_or_above == 0);
    CHECK(none.fraction == 0.0);
    CHECK(none.empty);
    CHECK(none.region_cells == 0);
}

TEST_CASE("plateau region lookup follows 4-neighbor connectivity") {
    // Hand-built result: two separate regions above 0.5 on a 3x3 grid.
    SweepResult result;
    result.spec = small_spec(3, 3);
    result.cells.resize(9);
    auto set = [&](int i, int j, double v) {
        SweepCell& cell = result.cells[static_cast<size_t>(i) * 3 + j];
        cell.ok = true;
        cell.value = v;
    };
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) set(i, j, 0.0);
    set(0, 0, 0.9);  // isolated corner
    set(2, 0, 0.9);  // L-shaped pair (diagonal from (0,0), not connected to it)
    set(2, 1, 0.9);

    const PlateauSummary best = plateau_summary(result, 0.5);
    CHECK(best.cells_at_or_above == 3);
    CHECK(best.region_cells == 2);
    CHECK(best.i_min == 2);
    CHECK(best.i_max == 2);
    CHECK(best.j_min == 0);
    CHECK(best.j_max == 1);

    const PlateauSummary corner = plateau_region_at(result, 0.5, 0, 0);
    CHECK_FALSE(corner.empty);
    CHECK(corner.region_cells == 1);

    const PlateauSummary miss = plateau_region_at(result, 0.5, 1, 1);
    CHECK(miss.empty);
}
