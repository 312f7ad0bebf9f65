#ifndef LAMBDASIM_SWEEP_HPP
#define LAMBDASIM_SWEEP_HPP

#include <string>
#include <vector>

#include "lambdasim/dynamics.hpp"

namespace lambdasim {

/// Closed set of sweepable scalar parameters. `chirp_both` sets the chirp of
/// both pulses to the same value.
enum class SweepParameter {
    pulse1_peak_rabi,
    pulse2_peak_rabi,
    pulse1_chirp,
    pulse2_chirp,
    chirp_both,
    pulse1_width,
    pulse2_width,
};

enum class SweepObservable {
    final_abs_rho21,
    final_rho22,
    final_rho_dd,
    max_rho33,
};

const char* to_string(SweepParameter param);
const char* to_string(SweepObservable obs);
SweepParameter sweep_parameter_from_string(const std::string& name);
SweepObservable sweep_observable_from_string(const std::string& name);

struct SweepAxis {
    SweepParameter param = SweepParameter::chirp_both;
    double min = 0.0;
    double max = 0.0;
    int count = 1;

    // Grid coordinate i in [0, count). Evaluated as min + ((max-min)*i)/(count-1)
    // so that refined grids reproduce coarse-grid coordinates bit-exactly.
    double value_at(int i) const {
        if (count == 1) return min;
        return min + ((max - min) * static_cast<double>(i)) / static_cast<double>(count - 1);
    }
};

struct SweepSpec {
    SimulationConfig base{};
    SweepAxis axis1{};
    SweepAxis axis2{};
    SweepObservable observable = SweepObservable::final_abs_rho21;
};

void validate(const SweepSpec& spec);

// Applies one axis value onto a config.
void apply_parameter(SimulationConfig& config, SweepParameter param, double value);

struct SweepCell {
    double param1 = 0.0;
    double param2 = 0.0;
    double value = 0.0;            // NaN when the cell failed
    double trace_error_max = 0.0;
    bool ok = false;
    std::string error;             // failure reason, empty when ok
};

/// Complete row-major grid (axis1-major) of per-cell results.
struct SweepResult {
    SweepSpec spec;
    std::vector<SweepCell> cells;

    const SweepCell& at(int i, int j) const { return cells[static_cast<size_t>(i) * spec.axis2.count + j]; }
    int failed_count() const;
};

// Worker count used when the caller passes workers <= 0: the LAMBDASIM_WORKERS
// environment variable if set to a positive integer, otherwise the hardware
// concurrency.
int default_worker_count();

// Runs every grid cell (independent integrations, executed concurrently) and
// assembles results in grid order. Per-cell failures are recorded in the cell,
// never thrown.
SweepResult run_sweep(const SweepSpec& spec, int workers = 0);

struct PlateauSummary {
    int cells_at_or_above = 0;
    double fraction = 0.0;
    // Largest 4-connected region of cells >= threshold: cell count and
    // inclusive index bounding box. Empty when no cell qualifies.
    int region_cells = 0;
    int i_min = 0, i_max = 0, j_min = 0, j_max = 0;
    bool empty = true;
};

PlateauSummary plateau_summary(const SweepResult& result, double threshold);

// Same summary restricted to the connected region containing cell (i, j);
// empty when that cell is below threshold.
PlateauSummary plateau_region_at(const SweepResult& result, double threshold, int i, int j);

} // namespace lambdasim

#endif
