#include "lambdasim/sweep.hpp"

#include <atomic>
#include <cstdlib>
#include <limits>
#include <queue>
#include <thread>

namespace lambdasim {

const char* to_string(SweepParameter param) {
    switch (param) {
        case SweepParameter::pulse1_peak_rabi: return "pulse1.peak_rabi";
        case SweepParameter::pulse2_peak_rabi: return "pulse2.peak_rabi";
        case SweepParameter::pulse1_chirp: return "pulse1.chirp";
        case SweepParameter::pulse2_chirp: return "pulse2.chirp";
        case SweepParameter::chirp_both: return "chirp_both";
        case SweepParameter::pulse1_width: return "pulse1.width";
        case SweepParameter::pulse2_width: return "pulse2.width";
    }
    return "?";
}

const char* to_string(SweepObservable obs) {
    switch (obs) {
        case SweepObservable::final_abs_rho21: return "final_abs_rho21";
        case SweepObservable::final_rho22: return "final_rho22";
        case SweepObservable::final_rho_dd: return "final_rho_DD";
        case SweepObservable::max_rho33: return "max_rho33";
    }
    return "?";
}

SweepParameter sweep_parameter_from_string(const std::string& name) {
    for (SweepParameter p : {SweepParameter::pulse1_peak_rabi, SweepParameter::pulse2_peak_rabi,
                             SweepParameter::pulse1_chirp, SweepParameter::pulse2_chirp,
                             SweepParameter::chirp_both, SweepParameter::pulse1_width,
                             SweepParameter::pulse2_width}) {
        if (name == to_string(p)) return p;
    }
    throw validation_error("sweep axis: unknown parameter \"" + name + "\"");
}

SweepObservable sweep_observable_from_string(const std::string& name) {
    for (SweepObservable o : {SweepObservable::final_abs_rho21, SweepObservable::final_rho22,
                              SweepObservable::final_rho_dd, SweepObservable::max_rho33}) {
        if (name == to_string(o)) return o;
    }
    throw validation_error("sweep: unknown observable \"" + name + "\"");
}

namespace {

void validate_axis(const SweepAxis& axis, const std::string& label) {
    if (axis.count < 1)
        throw validation_error(label + ": count >= 1 violated (got " +
                               std::to_string(axis.count) + ")");
    if (!(axis.min <= axis.max))
        throw validation_error(label + ": min <= max violated");
}

double extract_observable(SweepObservable obs, const Trajectory& traj) {
    const FinalObservables fin = final_observables(traj);
    switch (obs) {
        case SweepObservable::final_abs_rho21: return fin.abs_rho21;
        case SweepObservable::final_rho22: return fin.rho22;
        case SweepObservable::final_rho_dd: return fin.rho_dd;
        case SweepObservable::max_rho33: return fin.max_rho33;
    }
    return 0.0;
}

} // namespace

void validate(const SweepSpec& spec) {
    validate(spec.base);
    validate_axis(spec.axis1, "sweep axis1");
    validate_axis(spec.axis2, "sweep axis2");
}

void apply_parameter(SimulationConfig& config, SweepParameter param, double value) {
    switch (param) {
        case SweepParameter::pulse1_peak_rabi: config.pulse1.peak_rabi = value; break;
        case SweepParameter::pulse2_peak_rabi: config.pulse2.peak_rabi = value; break;
        case SweepParameter::pulse1_chirp: config.pulse1.chirp = value; break;
        case SweepParameter::pulse2_chirp: config.pulse2.chirp = value; break;
        case SweepParameter::chirp_both:
            config.pulse1.chirp = value;
            config.pulse2.chirp = value;
            break;
        case SweepParameter::pulse1_width: config.pulse1.width = value; break;
        case SweepParameter::pulse2_width: config.pulse2.width = value; break;
    }
}

int SweepResult::failed_count() const {
    int n = 0;
    for (const SweepCell& cell : cells)
        if (!cell.ok) ++n;
    return n;
}

int default_worker_count() {
    if (const char* env = std::getenv("LAMBDASIM_WORKERS")) {
        char* end = nullptr;
        const long parsed = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && parsed > 0)
            return static_cast<int>(parsed);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

SweepResult run_sweep(const SweepSpec& spec, int workers) {
    validate(spec);

    const int n1 = spec.axis1.count;
    const int n2 = spec.axis2.count;
    const int total = n1 * n2;

    SweepResult result;
    result.spec = spec;
    result.cells.resize(static_cast<size_t>(total));

    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int idx = next.fetch_add(1, std::memory_order_relaxed);
            if (idx >= total) return;
            const int i = idx / n2;
            const int j = idx % n2;
            SweepCell& cell = result.cells[static_cast<size_t>(idx)];
            cell.param1 = spec.axis1.value_at(i);
            cell.param2 = spec.axis2.value_at(j);
            try {
                SimulationConfig config = spec.base;
                apply_parameter(config, spec.axis1.param, cell.param1);
                apply_parameter(config, spec.axis2.param, cell.param2);
                const Trajectory traj = integrate(config);
                cell.value = extract_observable(spec.observable, traj);
                cell.trace_error_max = traj.max_trace_error;
                cell.ok = true;
            } catch (const std::exception& e) {
                cell.ok = false;
                cell.value = std::numeric_limits<double>::quiet_NaN();
                cell.error = e.what();
            }
        }
    };

    int n_workers = workers > 0 ? workers : default_worker_count();
    n_workers = std::min(n_workers, total);
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(n_workers));
        for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }

    return result;
}

namespace {

struct GridMask {
    int n1 = 0, n2 = 0;
    std::vector<char> above;
    bool at(int i, int j) const { return above[static_cast<size_t>(i) * n2 + j] != 0; }
};

GridMask threshold_mask(const SweepResult& result, double threshold) {
    GridMask mask;
    mask.n1 = result.spec.axis1.count;
    mask.n2 = result.spec.axis2.count;
    mask.above.assign(result.cells.size(), 0);
    for (size_t idx = 0; idx < result.cells.size(); ++idx) {
        const SweepCell& cell = result.cells[idx];
        if (cell.ok && cell.value >= threshold) mask.above[idx] = 1;
    }
    return mask;
}

// Flood fill of the 4-connected component containing (i0, j0).
PlateauSummary component_at(const GridMask& mask, int i0, int j0,
                            std::vector<char>& visited) {
    PlateauSummary region;
    region.empty = false;
    region.i_min = region.i_max = i0;
    region.j_min = region.j_max = j0;
    std::queue<std::pair<int, int>> frontier;
    frontier.emplace(i0, j0);
    visited[static_cast<size_t>(i0) * mask.n2 + j0] = 1;
    while (!frontier.empty()) {
        const auto [i, j] = frontier.front();
        frontier.pop();
        ++region.region_cells;
        region.i_min = std::min(region.i_min, i);
        region.i_max = std::max(region.i_max, i);
        region.j_min = std::min(region.j_min, j);
        region.j_max = std::max(region.j_max, j);
        const int di[] = {-1, 1, 0, 0};
        const int dj[] = {0, 0, -1, 1};
        for (int d = 0; d < 4; ++d) {
            const int ni = i + di[d];
            const int nj = j + dj[d];
            if (ni < 0 || ni >= mask.n1 || nj < 0 || nj >= mask.n2) continue;
            char& seen = visited[static_cast<size_t>(ni) * mask.n2 + nj];
            if (seen || !mask.at(ni, nj)) continue;
            seen = 1;
            frontier.emplace(ni, nj);
        }
    }
    return region;
}

} // namespace

PlateauSummary plateau_summary(const SweepResult& result, double threshold) {
    const GridMask mask = threshold_mask(result, threshold);
    PlateauSummary best;
    int count = 0;
    std::vector<char> visited(mask.above.size(), 0);
    for (int i = 0; i < mask.n1; ++i) {
        for (int j = 0; j < mask.n2; ++j) {
            if (!mask.at(i, j)) continue;
            ++count;
            if (visited[static_cast<size_t>(i) * mask.n2 + j]) continue;
            const PlateauSummary region = component_at(mask, i, j, visited);
            if (region.region_cells > best.region_cells) best = region;
        }
    }
    best.cells_at_or_above = count;
    best.fraction = result.cells.empty()
                        ? 0.0
                        : static_cast<double>(count) / static_cast<double>(result.cells.size());
    return best;
}

PlateauSummary plateau_region_at(const SweepResult& result, double threshold, int i, int j) {
    const GridMask mask = threshold_mask(result, threshold);
    PlateauSummary out;
    int count = 0;
    for (size_t idx = 0; idx < mask.above.size(); ++idx)
        if (mask.above[idx]) ++count;
    out.cells_at_or_above = count;
    out.fraction = result.cells.empty()
                       ? 0.0
                       : static_cast<double>(count) / static_cast<double>(result.cells.size());
    if (i < 0 || i >= mask.n1 || j < 0 || j >= mask.n2 || !mask.at(i, j)) return out;
    std::vector<char> visited(mask.above.size(), 0);
    const PlateauSummary region = component_at(mask, i, j, visited);
    out.empty = false;
    out.region_cells = region.region_cells;
    out.i_min = region.i_min;
    out.i_max = region.i_max;
    out.j_min = region.j_min;
    out.j_max = region.j_max;
    return out;
}

} // namespace lambdasim
