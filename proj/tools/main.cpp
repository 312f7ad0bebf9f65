#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lambdasim/figures.hpp"
#include "lambdasim/io.hpp"
#include "lambdasim/selftest.hpp"
#include "lambdasim/version.hpp"

namespace {

namespace fs = std::filesystem;
using namespace lambdasim;

constexpr int exit_ok = 0;
constexpr int exit_validation = 1;
constexpr int exit_numerical = 2;
constexpr int exit_partial_sweep = 3;

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void warn_if_coarse(const ConfigDiagnostics& diag) {
    if (diag.step_resolution_warning)
        std::cerr << "warning: dt resolves at most " << diag.max_phase_step_rad
                  << " rad of phase per step where the field is significant"
                  << " (recommended <= 0.2); consider a smaller --dt\n";
}

void print_finals(const Trajectory& traj) {
    const FinalObservables fin = final_observables(traj);
    std::printf("final: |rho21| = %.6f  rho11 = %.6f  rho22 = %.6f  rho33 = %.6f  "
                "rho_DD = %.6f  (max rho33 = %.6f)\n",
                fin.abs_rho21, fin.rho11, fin.rho22, fin.rho33, fin.rho_dd, fin.max_rho33);
}

int run_trajectory(SimulationConfig config, const fs::path& out) {
    const ConfigDiagnostics diag = validate(config);
    warn_if_coarse(diag);
    const auto start = std::chrono::steady_clock::now();
    const Trajectory traj = integrate(config);
    const RunManifest manifest =
        make_trajectory_manifest(config, traj, diag, seconds_since(start));
    write_trajectory_csv(traj, manifest, out);
    std::printf("wrote %s (%zu samples)\n", out.string().c_str(), traj.samples.size());
    print_finals(traj);
    return exit_ok;
}

int run_sweep_to(const SweepSpec& spec, const fs::path& out, int workers) {
    const auto start = std::chrono::steady_clock::now();
    const SweepResult result = run_sweep(spec, workers);
    const RunManifest manifest = make_sweep_manifest(spec, result, seconds_since(start));
    write_sweep_csv(result, manifest, out);
    std::printf("wrote %s (%d x %d cells)\n", out.string().c_str(), spec.axis1.count,
                spec.axis2.count);
    if (result.failed_count() > 0) {
        std::cerr << "error: " << result.failed_count()
                  << " sweep cell(s) failed; see the output status column\n";
        return exit_partial_sweep;
    }
    const PlateauSummary plateau = plateau_summary(result, 0.45);
    std::printf("cells >= 0.45: %d (%.1f%%)\n", plateau.cells_at_or_above,
                100.0 * plateau.fraction);
    return exit_ok;
}

struct RunOverrides {
    std::optional<double> dt;
    std::optional<double> t_halfspan;
    std::optional<std::string> variant;

    void apply(SimulationConfig& config) const {
        if (dt) config.dt = *dt;
        if (t_halfspan) {
            config.t_start = -*t_halfspan;
            config.t_end = *t_halfspan;
        }
        if (variant) config.variant = variant_from_string(*variant);
    }
};

int do_run(const fs::path& config_path, const fs::path& out, const RunOverrides& overrides) {
    ParsedConfig parsed = load_config_file(config_path);
    if (std::holds_alternative<SweepSpec>(parsed))
        throw validation_error("config contains a sweep section; use the sweep subcommand");
    SimulationConfig config = std::get<SimulationConfig>(parsed);
    overrides.apply(config);
    return run_trajectory(std::move(config), out);
}

int do_sweep(const fs::path& config_path, const fs::path& out, int workers) {
    ParsedConfig parsed = load_config_file(config_path);
    if (!std::holds_alternative<SweepSpec>(parsed))
        throw validation_error("config has no sweep section; use the run subcommand");
    return run_sweep_to(std::get<SweepSpec>(parsed), out, workers);
}

int do_reproduce(int figure, const fs::path& out_dir, int workers,
                 const RunOverrides& overrides) {
    fs::create_directories(out_dir);
    switch (figure) {
        case 2: {
            SimulationConfig config = figures::coherence_run();
            overrides.apply(config);
            return run_trajectory(std::move(config), out_dir / "fig2_trajectory.csv");
        }
        case 3: {
            SweepSpec spec = figures::robustness_sweep();
            RunOverrides base_overrides = overrides;
            base_overrides.apply(spec.base);
            return run_sweep_to(spec, out_dir / "fig3_sweep.csv", workers);
        }
        case 4: {
            SimulationConfig config = figures::transfer_run();
            overrides.apply(config);
            return run_trajectory(std::move(config), out_dir / "fig4_trajectory.csv");
        }
        default:
            throw validation_error("--figure must be 2, 3 or 4");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Non-RWA dynamics of a three-level lambda atom driven by two "
                 "nonlinearly chirped few-cycle pulses"};
    app.set_version_flag("--version", std::string(version_string));
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    RunOverrides overrides;
    double dt_value = 0.0;
    double span_value = 0.0;
    std::string variant_value;
    int workers = 0;
    int figure = 0;

    CLI::App* run = app.add_subcommand("run", "Integrate one configuration and write a trajectory CSV");
    run->add_option("--config", config_path, "config file (JSON, // comments allowed)")->required();
    run->add_option("--out", out_path, "output CSV path")->required();
    CLI::Option* run_dt = run->add_option("--dt", dt_value, "override step size [fs]");
    CLI::Option* run_span = run->add_option("--t-span", span_value,
                                            "override window to [-X, +X] fs");
    CLI::Option* run_variant =
        run->add_option("--variant", variant_value, "derived | paper-literal");

    CLI::App* sweep = app.add_subcommand("sweep", "Run a 2-D parameter sweep and write a grid CSV");
    sweep->add_option("--config", config_path, "config file with a sweep section")->required();
    sweep->add_option("--out", out_path, "output CSV path")->required();
    sweep->add_option("--workers", workers, "worker threads (default: LAMBDASIM_WORKERS or CPU count)");

    CLI::App* reproduce = app.add_subcommand("reproduce", "Rerun a built-in figure configuration");
    reproduce->add_option("--figure", figure, "2, 3 or 4")->required();
    reproduce->add_option("--out", out_path, "output directory")->required();
    reproduce->add_option("--workers", workers, "worker threads (figure 3 only)");
    CLI::Option* rep_variant =
        reproduce->add_option("--variant", variant_value, "derived | paper-literal");

    CLI::App* check = app.add_subcommand("check", "Run the physics self-test suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_validation;
    }

    if (run_dt->count()) overrides.dt = dt_value;
    if (run_span->count()) overrides.t_halfspan = span_value;
    if (run_variant->count() || rep_variant->count()) overrides.variant = variant_value;

    try {
        if (run->parsed()) return do_run(config_path, out_path, overrides);
        if (sweep->parsed()) return do_sweep(config_path, out_path, workers);
        if (reproduce->parsed()) return do_reproduce(figure, out_path, workers, overrides);
        if (check->parsed()) return run_selftests(std::cout) ? exit_ok : exit_numerical;
    } catch (const numeric_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_validation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_validation;
    }
    return exit_ok;
}
