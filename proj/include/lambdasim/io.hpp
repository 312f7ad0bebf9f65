#ifndef LAMBDASIM_IO_HPP
#define LAMBDASIM_IO_HPP

#include <filesystem>
#include <string>
#include <variant>

#include "lambdasim/dynamics.hpp"
#include "lambdasim/sweep.hpp"

namespace lambdasim {

using ParsedConfig = std::variant<SimulationConfig, SweepSpec>;

// Parses a JSON config document (// and /* */ comments allowed). Unspecified
// keys fall back to the sodium defaults: resonant carriers derived from the
// system frequencies, a +-5*width window, dt = 5e-4 fs. A document containing
// a "sweep" section parses as a SweepSpec. Unknown keys are an error.
// Throws validation_error with parse/validation context.
ParsedConfig parse_config(const std::string& text);
ParsedConfig load_config_file(const std::filesystem::path& path);

std::string serialize(const SimulationConfig& config);
std::string serialize(const SweepSpec& spec);

/// Everything needed to rerun and audit one invocation; written as a JSON
/// sidecar next to each output file.
struct RunManifest {
    std::string tool_version;
    std::string kind;          // "trajectory" or "sweep"
    std::string config_json;   // serialized config document
    double wall_seconds = 0.0;
    double max_trace_error = 0.0;
    double min_purity = 1.0;
    double max_hermiticity_drift = 0.0;
    double max_phase_step_rad = 0.0;
    bool step_resolution_warning = false;
    int failed_cells = 0;      // sweeps only
};

RunManifest make_trajectory_manifest(const SimulationConfig& config,
                                     const Trajectory& trajectory,
                                     const ConfigDiagnostics& diagnostics,
                                     double wall_seconds);
RunManifest make_sweep_manifest(const SweepSpec& spec, const SweepResult& result,
                                double wall_seconds);

std::filesystem::path manifest_path_for(const std::filesystem::path& output);

// Plain CSV, 12 significant digits, fixed header, rows in time order. The
// manifest goes to manifest_path_for(path). Throws std::runtime_error on I/O
// failure and validation_error on an empty trajectory.
void write_trajectory_csv(const Trajectory& trajectory, const RunManifest& manifest,
                          const std::filesystem::path& path);

// Header "param1,param2,observable,status"; row-major cell order; failed
// cells carry value nan and status "failed".
void write_sweep_csv(const SweepResult& result, const RunManifest& manifest,
                     const std::filesystem::path& path);

} // namespace lambdasim

#endif
