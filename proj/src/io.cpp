#include "lambdasim/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lambdasim/version.hpp"

namespace lambdasim {

using nlohmann::json;

namespace {

std::string join_path(const std::string& scope, const std::string& key) {
    return scope.empty() ? key : scope + "." + key;
}

void require_object(const json& node, const std::string& scope) {
    if (!node.is_object())
        throw validation_error("config: \"" + scope + "\" must be an object");
}

void reject_unknown_keys(const json& node, const std::string& scope,
                         std::initializer_list<const char*> allowed) {
    for (const auto& item : node.items()) {
        bool known = false;
        for (const char* key : allowed)
            if (item.key() == key) { known = true; break; }
        if (!known)
            throw validation_error("config: unknown key \"" + join_path(scope, item.key()) + "\"");
    }
}

double get_double(const json& node, const std::string& scope, const char* key,
                  double fallback) {
    if (!node.contains(key)) return fallback;
    const json& value = node.at(key);
    if (!value.is_number())
        throw validation_error("config: \"" + join_path(scope, key) + "\" must be a number");
    return value.get<double>();
}

int get_int(const json& node, const std::string& scope, const char* key, int fallback) {
    if (!node.contains(key)) return fallback;
    const json& value = node.at(key);
    if (!value.is_number_integer())
        throw validation_error("config: \"" + join_path(scope, key) + "\" must be an integer");
    return value.get<int>();
}

std::string get_string(const json& node, const std::string& scope, const char* key,
                       const std::string& fallback) {
    if (!node.contains(key)) return fallback;
    const json& value = node.at(key);
    if (!value.is_string())
        throw validation_error("config: \"" + join_path(scope, key) + "\" must be a string");
    return value.get<std::string>();
}

void parse_pulse(const json& node, const std::string& scope, ChirpedPulse& pulse) {
    require_object(node, scope);
    reject_unknown_keys(node, scope, {"peak_rabi", "width", "carrier", "chirp"});
    pulse.peak_rabi = get_double(node, scope, "peak_rabi", pulse.peak_rabi);
    pulse.width = get_double(node, scope, "width", pulse.width);
    pulse.carrier = get_double(node, scope, "carrier", pulse.carrier);
    pulse.chirp = get_double(node, scope, "chirp", pulse.chirp);
}

DensityMatrix parse_initial_state(const json& node) {
    if (node.is_string()) {
        if (node.get<std::string>() == "ground") return ground_state();
        throw validation_error("config: initial_state string must be \"ground\"");
    }
    if (!node.is_array() || node.size() != 3)
        throw validation_error("config: initial_state must be \"ground\" or a 3x3 array of [re, im] pairs");
    DensityMatrix rho;
    for (int i = 0; i < 3; ++i) {
        const json& row = node.at(i);
        if (!row.is_array() || row.size() != 3)
            throw validation_error("config: initial_state row " + std::to_string(i) +
                                   " must have 3 entries");
        for (int j = 0; j < 3; ++j) {
            const json& entry = row.at(j);
            if (!entry.is_array() || entry.size() != 2 || !entry.at(0).is_number() ||
                !entry.at(1).is_number())
                throw validation_error("config: initial_state entries must be [re, im] numbers");
            rho(i, j) = std::complex<double>(entry.at(0).get<double>(),
                                             entry.at(1).get<double>());
        }
    }
    return rho;
}

SimulationConfig parse_simulation(const json& doc) {
    SimulationConfig config;

    if (doc.contains("system")) {
        const json& node = doc.at("system");
        require_object(node, "system");
        reject_unknown_keys(node, "system", {"omega31", "omega21", "dipole31", "dipole32"});
        config.system.omega31 = get_double(node, "system", "omega31", config.system.omega31);
        config.system.omega21 = get_double(node, "system", "omega21", config.system.omega21);
        config.system.dipole31 = get_double(node, "system", "dipole31", config.system.dipole31);
        config.system.dipole32 = get_double(node, "system", "dipole32", config.system.dipole32);
    }

    // Resonant-carrier defaults track the (possibly overridden) system; an
    // explicit carrier key still wins below.
    config.pulse1.carrier = config.system.omega31;
    config.pulse2.carrier = config.system.omega32();

    if (doc.contains("pulse1")) parse_pulse(doc.at("pulse1"), "pulse1", config.pulse1);
    if (doc.contains("pulse2")) parse_pulse(doc.at("pulse2"), "pulse2", config.pulse2);

    const double halfspan = 5.0 * std::max(config.pulse1.width, config.pulse2.width);
    config.t_start = -halfspan;
    config.t_end = halfspan;

    if (doc.contains("time")) {
        const json& node = doc.at("time");
        require_object(node, "time");
        reject_unknown_keys(node, "time", {"start", "end", "dt", "record_stride"});
        config.t_start = get_double(node, "time", "start", config.t_start);
        config.t_end = get_double(node, "time", "end", config.t_end);
        config.dt = get_double(node, "time", "dt", config.dt);
        config.record_stride = get_int(node, "time", "record_stride", config.record_stride);
    }

    config.variant = variant_from_string(get_string(doc, "", "variant", "derived"));
    config.basis.theta = get_double(doc, "", "theta", config.basis.theta);
    if (doc.contains("initial_state"))
        config.initial_state = parse_initial_state(doc.at("initial_state"));

    return config;
}

SweepAxis parse_axis(const json& node, const std::string& scope) {
    require_object(node, scope);
    reject_unknown_keys(node, scope, {"param", "min", "max", "count"});
    SweepAxis axis;
    if (!node.contains("param"))
        throw validation_error("config: \"" + scope + ".param\" is required");
    axis.param = sweep_parameter_from_string(get_string(node, scope, "param", ""));
    if (!node.contains("min") || !node.contains("max"))
        throw validation_error("config: \"" + scope + "\" needs min and max");
    axis.min = get_double(node, scope, "min", 0.0);
    axis.max = get_double(node, scope, "max", 0.0);
    axis.count = get_int(node, scope, "count", 1);
    return axis;
}

json initial_state_to_json(const DensityMatrix& rho) {
    if (rho == ground_state()) return json("ground");
    json rows = json::array();
    for (int i = 0; i < 3; ++i) {
        json row = json::array();
        for (int j = 0; j < 3; ++j)
            row.push_back(json::array({rho(i, j).real(), rho(i, j).imag()}));
        rows.push_back(row);
    }
    return rows;
}

json simulation_to_json(const SimulationConfig& config) {
    json doc;
    doc["system"] = {{"omega31", config.system.omega31},
                     {"omega21", config.system.omega21},
                     {"dipole31", config.system.dipole31},
                     {"dipole32", config.system.dipole32}};
    doc["pulse1"] = {{"peak_rabi", config.pulse1.peak_rabi},
                     {"width", config.pulse1.width},
                     {"carrier", config.pulse1.carrier},
                     {"chirp", config.pulse1.chirp}};
    doc["pulse2"] = {{"peak_rabi", config.pulse2.peak_rabi},
                     {"width", config.pulse2.width},
                     {"carrier", config.pulse2.carrier},
                     {"chirp", config.pulse2.chirp}};
    doc["time"] = {{"start", config.t_start},
                   {"end", config.t_end},
                   {"dt", config.dt},
                   {"record_stride", config.record_stride}};
    doc["variant"] = to_string(config.variant);
    doc["theta"] = config.basis.theta;
    doc["initial_state"] = initial_state_to_json(config.initial_state);
    return doc;
}

json sweep_to_json(const SweepSpec& spec) {
    json doc = simulation_to_json(spec.base);
    doc["sweep"] = {{"axis1",
                     {{"param", to_string(spec.axis1.param)},
                      {"min", spec.axis1.min},
                      {"max", spec.axis1.max},
                      {"count", spec.axis1.count}}},
                    {"axis2",
                     {{"param", to_string(spec.axis2.param)},
                      {"min", spec.axis2.min},
                      {"max", spec.axis2.max},
                      {"count", spec.axis2.count}}},
                    {"observable", to_string(spec.observable)}};
    return doc;
}

} // namespace

ParsedConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::exception& e) {
        throw validation_error(std::string("config: ") + e.what());
    }
    require_object(doc, "document");
    reject_unknown_keys(doc, "",
                        {"system", "pulse1", "pulse2", "time", "variant", "theta",
                         "initial_state", "sweep"});

    SimulationConfig base = parse_simulation(doc);

    if (!doc.contains("sweep")) {
        validate(base);
        return base;
    }

    const json& node = doc.at("sweep");
    require_object(node, "sweep");
    reject_unknown_keys(node, "sweep", {"axis1", "axis2", "observable"});
    SweepSpec spec;
    spec.base = base;
    if (!node.contains("axis1") || !node.contains("axis2"))
        throw validation_error("config: sweep needs axis1 and axis2");
    spec.axis1 = parse_axis(node.at("axis1"), "sweep.axis1");
    spec.axis2 = parse_axis(node.at("axis2"), "sweep.axis2");
    spec.observable =
        sweep_observable_from_string(get_string(node, "sweep", "observable", "final_abs_rho21"));
    validate(spec);
    return spec;
}

ParsedConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw validation_error("cannot read config file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string serialize(const SimulationConfig& config) {
    return simulation_to_json(config).dump(2) + "\n";
}

std::string serialize(const SweepSpec& spec) {
    return sweep_to_json(spec).dump(2) + "\n";
}

RunManifest make_trajectory_manifest(const SimulationConfig& config,
                                     const Trajectory& trajectory,
                                     const ConfigDiagnostics& diagnostics,
                                     double wall_seconds) {
    RunManifest m;
    m.tool_version = version_string;
    m.kind = "trajectory";
    m.config_json = serialize(config);
    m.wall_seconds = wall_seconds;
    m.max_trace_error = trajectory.max_trace_error;
    m.min_purity = trajectory.min_purity;
    m.max_hermiticity_drift = trajectory.max_hermiticity_drift;
    m.max_phase_step_rad = diagnostics.max_phase_step_rad;
    m.step_resolution_warning = diagnostics.step_resolution_warning;
    return m;
}

RunManifest make_sweep_manifest(const SweepSpec& spec, const SweepResult& result,
                                double wall_seconds) {
    RunManifest m;
    m.tool_version = version_string;
    m.kind = "sweep";
    m.config_json = serialize(spec);
    m.wall_seconds = wall_seconds;
    m.min_purity = 1.0;
    for (const SweepCell& cell : result.cells)
        if (cell.ok) m.max_trace_error = std::max(m.max_trace_error, cell.trace_error_max);
    m.failed_cells = result.failed_count();
    const ConfigDiagnostics diag = validate(spec.base);
    m.max_phase_step_rad = diag.max_phase_step_rad;
    m.step_resolution_warning = diag.step_resolution_warning;
    return m;
}

std::filesystem::path manifest_path_for(const std::filesystem::path& output) {
    std::filesystem::path p = output;
    p += ".manifest.json";
    return p;
}

namespace {

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path) {
    json doc;
    doc["tool"] = "lambdasim";
    doc["tool_version"] = manifest.tool_version;
    doc["kind"] = manifest.kind;
    doc["config"] = json::parse(manifest.config_json);
    doc["wall_seconds"] = manifest.wall_seconds;
    json diag;
    diag["max_trace_error"] = manifest.max_trace_error;
    diag["min_purity"] = manifest.min_purity;
    diag["max_hermiticity_drift"] = manifest.max_hermiticity_drift;
    diag["max_phase_step_rad"] = manifest.max_phase_step_rad;
    diag["step_resolution_warning"] = manifest.step_resolution_warning;
    if (manifest.kind == "sweep") diag["failed_cells"] = manifest.failed_cells;
    doc["diagnostics"] = diag;

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write manifest: " + path.string());
    out << doc.dump(2) << "\n";
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

void append_g12(std::string& line, double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    line += buf;
}

} // namespace

void write_trajectory_csv(const Trajectory& trajectory, const RunManifest& manifest,
                          const std::filesystem::path& path) {
    if (trajectory.samples.empty())
        throw validation_error("trajectory: non-empty trajectory required");

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write: " + path.string());
    out << "t_fs,rho11,rho22,rho33,re_rho21,im_rho21,abs_rho21,re_rho31,im_rho31,"
           "re_rho32,im_rho32,rho_BB,rho_DD,trace_err,purity\n";
    std::string line;
    for (const TrajectorySample& s : trajectory.samples) {
        line.clear();
        const double fields[] = {s.t, s.rho11, s.rho22, s.rho33, s.re_rho21, s.im_rho21,
                                 s.abs_rho21, s.re_rho31, s.im_rho31, s.re_rho32,
                                 s.im_rho32, s.rho_bb, s.rho_dd, s.trace_err, s.purity};
        for (size_t k = 0; k < std::size(fields); ++k) {
            if (k) line += ',';
            append_g12(line, fields[k]);
        }
        line += '\n';
        out << line;
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
    out.close();

    write_manifest(manifest, manifest_path_for(path));
}

void write_sweep_csv(const SweepResult& result, const RunManifest& manifest,
                     const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write: " + path.string());
    out << "param1,param2,observable,status\n";
    std::string line;
    for (const SweepCell& cell : result.cells) {
        line.clear();
        append_g12(line, cell.param1);
        line += ',';
        append_g12(line, cell.param2);
        line += ',';
        append_g12(line, cell.value);
        line += ',';
        line += cell.ok ? "ok" : "failed";
        line += '\n';
        out << line;
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
    out.close();

    write_manifest(manifest, manifest_path_for(path));
}

} // namespace lambdasim
