#include "rydberg/run.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "rydberg/analysis.hpp"
#include "rydberg/constants.hpp"
#include "rydberg/io.hpp"
#include "rydberg/packet.hpp"
#include "rydberg/radial.hpp"
#include "rydberg/spectrum.hpp"

namespace rydberg::cli {

namespace {

using nlohmann::json;

std::string join_items(const std::vector<std::string>& items) {
    std::string msg = "invalid config:";
    for (const auto& item : items) {
        msg += "\n  - " + item;
    }
    return msg;
}

spectrum::EnergyModel model_for(const RunConfig& config) {
    return config.delta == 0.0 ? spectrum::EnergyModel::hydrogenic()
                               : spectrum::EnergyModel::with_defect(config.delta);
}

std::optional<int> parse_superrevival_q(const std::string& name) {
    const std::string prefix = "superrevival_q";
    if (name.rfind(prefix, 0) != 0) {
        return std::nullopt;
    }
    const std::string digits = name.substr(prefix.size());
    if (digits.empty() || digits.size() > 6 ||
        !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        return std::nullopt;
    }
    const int q = std::stoi(digits);
    return q >= 1 ? std::optional<int>(q) : std::nullopt;
}

bool known_symbolic(const std::string& name) {
    return name == "kepler" || name == "revival" || name == "superrevival_sixth" ||
           parse_superrevival_q(name).has_value();
}

/// Collect every config problem instead of stopping at the first.
std::vector<std::string> collect_problems(const RunConfig& config) {
    std::vector<std::string> problems;
    if (!(config.sigma > 0.0)) {
        problems.push_back("sigma: must be positive");
    }
    if (!(config.delta >= 0.0 && config.delta < 1.0)) {
        problems.push_back("delta: must lie in [0, 1)");
    }
    if (!(config.nbar - config.delta >= 2.0)) {
        problems.push_back("nbar: nbar - delta must be at least 2");
    }
    if (config.l < 0) {
        problems.push_back("l: must be nonnegative");
    }
    if (config.out.empty()) {
        problems.push_back("out: output directory must be set");
    }

    packet::WeightDistribution weights;
    bool have_weights = false;
    if (config.sigma > 0.0) {
        try {
            weights = packet::gaussian_weights(config.nbar, config.sigma);
            have_weights = true;
        } catch (const std::exception& e) {
            problems.push_back(std::string("nbar/sigma: ") + e.what());
        }
    }
    if (have_weights && config.emit.density_snapshots && config.l >= 0 &&
        config.l > weights.entries.front().n - 1) {
        problems.push_back("l: exceeds min(n) - 1 over the packet support");
    }

    const bool point_ok = config.nbar - config.delta >= 2.0;
    double t_cl = 0.0;
    if (point_ok) {
        t_cl = spectrum::time_scales(model_for(config), {config.nbar}).t_cl;
    }
    for (std::size_t i = 0; i < config.windows.size(); ++i) {
        const WindowSpec& spec = config.windows[i];
        const std::string tag = "windows[" + std::to_string(i) + "]";
        if (spec.symbolic) {
            if (!known_symbolic(*spec.symbolic)) {
                problems.push_back(tag + ": unknown symbolic window '" + *spec.symbolic + "'");
            }
            continue;
        }
        if (!(spec.t_hi >= spec.t_lo)) {
            problems.push_back(tag + ": t_hi must not precede t_lo");
        }
        if (!(spec.dt > 0.0)) {
            problems.push_back(tag + ": dt must be positive");
        } else if (point_ok && !(spec.dt < t_cl / 20.0)) {
            problems.push_back(tag + ": dt must be below T_cl/20 = " +
                               io::format_double_short(t_cl / 20.0));
        }
    }
    return problems;
}

json emit_to_json(const EmitFlags& emit) {
    return {{"series", emit.series},
            {"reports", emit.reports},
            {"density_snapshots", emit.density_snapshots},
            {"si_units", emit.si_units}};
}

json window_spec_to_json(const WindowSpec& spec) {
    if (spec.symbolic) {
        return *spec.symbolic;
    }
    return {{"t_lo", spec.t_lo}, {"t_hi", spec.t_hi}, {"dt", spec.dt}};
}

WindowSpec window_spec_from_json(const json& j, std::vector<std::string>& problems,
                                 std::size_t index) {
    WindowSpec spec;
    const std::string tag = "windows[" + std::to_string(index) + "]";
    if (j.is_string()) {
        spec.symbolic = j.get<std::string>();
        return spec;
    }
    if (!j.is_object()) {
        problems.push_back(tag + ": must be a symbolic name or {t_lo, t_hi, dt}");
        return spec;
    }
    for (const char* key : {"t_lo", "t_hi", "dt"}) {
        if (!j.contains(key) || !j.at(key).is_number()) {
            problems.push_back(tag + ": missing numeric field '" + std::string(key) + "'");
            return spec;
        }
    }
    spec.t_lo = j.at("t_lo").get<double>();
    spec.t_hi = j.at("t_hi").get<double>();
    spec.dt = j.at("dt").get<double>();
    return spec;
}

double read_number(const json& j, const char* key, double fallback,
                   std::vector<std::string>& problems) {
    if (!j.contains(key)) {
        return fallback;
    }
    if (!j.at(key).is_number()) {
        problems.push_back(std::string(key) + ": must be a number");
        return fallback;
    }
    return j.at(key).get<double>();
}

bool read_flag(const json& j, const char* key, bool fallback,
               std::vector<std::string>& problems) {
    if (!j.contains(key)) {
        return fallback;
    }
    if (!j.at(key).is_boolean()) {
        problems.push_back(std::string("emit.") + key + ": must be a boolean");
        return fallback;
    }
    return j.at(key).get<bool>();
}

} // namespace

ConfigError::ConfigError(std::vector<std::string> items)
    : std::runtime_error(join_items(items)), items_(std::move(items)) {}

RunConfig RunConfig::from_json(const json& j) {
    std::vector<std::string> problems;
    if (!j.is_object()) {
        throw ConfigError({"config: top-level JSON value must be an object"});
    }
    RunConfig config;
    config.nbar = read_number(j, "nbar", config.nbar, problems);
    config.sigma = read_number(j, "sigma", config.sigma, problems);
    config.delta = read_number(j, "delta", config.delta, problems);
    if (j.contains("l")) {
        if (!j.at("l").is_number_integer()) {
            problems.push_back("l: must be an integer");
        } else {
            config.l = j.at("l").get<int>();
        }
    }
    if (j.contains("out")) {
        if (!j.at("out").is_string()) {
            problems.push_back("out: must be a string");
        } else {
            config.out = j.at("out").get<std::string>();
        }
    }
    if (j.contains("windows")) {
        if (!j.at("windows").is_array()) {
            problems.push_back("windows: must be an array");
        } else {
            const auto& arr = j.at("windows");
            for (std::size_t i = 0; i < arr.size(); ++i) {
                config.windows.push_back(window_spec_from_json(arr[i], problems, i));
            }
        }
    }
    if (j.contains("emit")) {
        if (!j.at("emit").is_object()) {
            problems.push_back("emit: must be an object");
        } else {
            const auto& e = j.at("emit");
            config.emit.series = read_flag(e, "series", config.emit.series, problems);
            config.emit.reports = read_flag(e, "reports", config.emit.reports, problems);
            config.emit.density_snapshots =
                read_flag(e, "density_snapshots", config.emit.density_snapshots, problems);
            config.emit.si_units = read_flag(e, "si_units", config.emit.si_units, problems);
        }
    }
    if (!problems.empty()) {
        throw ConfigError(std::move(problems));
    }
    return config;
}

json RunConfig::to_json() const {
    json windows_json = json::array();
    for (const auto& spec : windows) {
        windows_json.push_back(window_spec_to_json(spec));
    }
    return {{"nbar", nbar},       {"sigma", sigma},
            {"delta", delta},     {"l", l},
            {"windows", windows_json}, {"out", out.string()},
            {"emit", emit_to_json(emit)}};
}

SweepConfig SweepConfig::from_json(const json& j) {
    std::vector<std::string> problems;
    if (!j.is_object()) {
        throw ConfigError({"sweep: top-level JSON value must be an object"});
    }
    SweepConfig config;
    if (!j.contains("base") || !j.at("base").is_object()) {
        problems.push_back("base: run configuration object required");
    } else {
        config.base = RunConfig::from_json(j.at("base"));
    }
    if (!j.contains("axis") || !j.at("axis").is_string()) {
        problems.push_back("axis: must be one of nbar | sigma | delta");
    } else {
        config.axis = j.at("axis").get<std::string>();
    }
    if (!j.contains("values") || !j.at("values").is_array() || j.at("values").empty()) {
        problems.push_back("values: nonempty array of numbers required");
    } else {
        for (const auto& v : j.at("values")) {
            if (!v.is_number()) {
                problems.push_back("values: every entry must be a number");
                break;
            }
            config.values.push_back(v.get<double>());
        }
    }
    if (!problems.empty()) {
        throw ConfigError(std::move(problems));
    }
    return config;
}

ResolvedWindow resolve_window(const WindowSpec& spec, const RunConfig& config,
                              std::size_t index) {
    if (!spec.symbolic) {
        return {"window_" + std::to_string(index), spec.t_lo, spec.t_hi, spec.dt};
    }
    const spectrum::TimeScales ts =
        spectrum::time_scales(model_for(config), {config.nbar});
    const std::string& name = *spec.symbolic;
    if (name == "kepler") {
        return {name, 0.0, 5.0 * ts.t_cl, ts.t_cl / 200.0};
    }
    if (name == "revival") {
        const double half = config.nbar * ts.t_cl / 10.0;
        return {name, std::max(0.0, ts.t_rev - half), ts.t_rev + half, ts.t_cl / 100.0};
    }
    if (name == "superrevival_sixth") {
        const double sixth = ts.t_sr / 6.0;
        return {name, sixth - ts.t_rev / 4.0, sixth + ts.t_rev / 4.0, ts.t_cl / 100.0};
    }
    if (const std::optional<int> q = parse_superrevival_q(name)) {
        const double t_frac = ts.t_sr / *q;
        const double T_frac = 3.0 / *q * ts.t_rev;
        const double dt = std::min(T_frac / 200.0, ts.t_cl / 32.0);
        return {name, std::max(0.0, t_frac - 1.5 * T_frac), t_frac + 1.5 * T_frac, dt};
    }
    throw ConfigError({"windows[" + std::to_string(index) + "]: unknown symbolic window '" +
                       name + "'"});
}

RunOutcome run(const RunConfig& config) {
    if (std::vector<std::string> problems = collect_problems(config); !problems.empty()) {
        throw ConfigError(std::move(problems));
    }

    const spectrum::EnergyModel model = model_for(config);
    const spectrum::ExpansionPoint point{config.nbar};
    const spectrum::TimeScales ts = spectrum::time_scales(model, point);
    const packet::WeightDistribution weights =
        packet::gaussian_weights(config.nbar, config.sigma);

    std::error_code ec;
    std::filesystem::create_directories(config.out, ec);
    if (ec) {
        throw std::runtime_error("run: cannot create output directory " +
                                 config.out.string() + ": " + ec.message());
    }

    RunOutcome outcome;
    outcome.t_cl_au = ts.t_cl;
    outcome.t_rev_au = ts.t_rev;
    outcome.t_sr_au = ts.t_sr;

    json time_scales_json{{"t_cl_au", ts.t_cl},
                          {"t_rev_au", ts.t_rev},
                          {"t_sr_au", ts.t_sr},
                          {"t_sr_sixth_au", ts.t_sr / 6.0}};
    if (config.emit.si_units) {
        time_scales_json["si"] = {
            {"t_cl_s", spectrum::to_si_seconds(ts.t_cl)},
            {"t_rev_s", spectrum::to_si_seconds(ts.t_rev)},
            {"t_sr_s", spectrum::to_si_seconds(ts.t_sr)},
            {"t_sr_sixth_s", spectrum::to_si_seconds(ts.t_sr / 6.0)},
            {"t_sr_sixth_ns", spectrum::to_si_seconds(ts.t_sr / 6.0) * 1e9}};
    }

    std::vector<std::string> outputs;
    json windows_json = json::array();
    for (std::size_t i = 0; i < config.windows.size(); ++i) {
        const ResolvedWindow window = resolve_window(config.windows[i], config, i);
        windows_json.push_back({{"label", window.label},
                                {"t_lo_au", window.t_lo},
                                {"t_hi_au", window.t_hi},
                                {"dt_au", window.dt}});
        if (config.emit.series) {
            const auto series = packet::autocorrelation_series(model, weights, window.t_lo,
                                                               window.t_hi, window.dt);
            const std::string filename = "series_" + window.label + ".csv";
            io::write_series_csv(config.out / filename, series);
            outputs.push_back(filename);
        }
    }

    json reports_json;
    if (config.emit.reports) {
        const auto scan = analysis::superrevival_scan(model, weights, point);
        const auto contrast = analysis::compare_revival_vs_superrevival(model, weights, point);
        const auto predictions = analysis::predicted_fractional_times(ts, 9);

        outcome.revival_max = contrast.revival_max;
        outcome.superrevival_sixth_max = contrast.superrevival_max;

        json predictions_json = json::array();
        for (const auto& p : predictions) {
            predictions_json.push_back(
                {{"q", p.q}, {"t_frac_au", p.t_frac}, {"T_frac_au", p.T_frac}});
        }
        reports_json = {{"scan", io::reports_to_json(scan)},
                        {"contrast",
                         {{"revival_max", contrast.revival_max},
                          {"superrevival_sixth_max", contrast.superrevival_max},
                          {"degenerate", contrast.degenerate}}},
                        {"predicted_fractional_times", predictions_json}};
        io::write_text_file(config.out / "reports.csv", io::reports_to_csv(scan));
        outputs.push_back("reports.csv");
    }

    if (config.emit.density_snapshots) {
        const radial::RadialGrid grid = radial::RadialGrid::default_for(config.nbar);
        const radial::PacketDensity pd(model, weights, config.l, grid);
        const std::vector<std::pair<std::string, double>> snapshots = {
            {"t0", 0.0}, {"trev", ts.t_rev}, {"tsr6", ts.t_sr / 6.0}};
        std::vector<std::vector<double>> densities;
        for (const auto& [label, t] : snapshots) {
            densities.push_back(pd.density(t));
            const std::string filename = "density_" + label + ".csv";
            io::write_text_file(config.out / filename,
                                io::density_to_csv(grid, densities.back()));
            outputs.push_back(filename);
            io::write_json_file(config.out / ("density_" + label + ".json"),
                                {{"t_au", t},
                                 {"l", config.l},
                                 {"model", io::model_to_json(model)},
                                 {"weights", io::weights_to_json(weights)},
                                 {"grid",
                                  {{"r_min", grid.r.front()},
                                   {"r_max", grid.r.back()},
                                   {"points", grid.r.size()}}}});
            outputs.push_back("density_" + label + ".json");
        }
        if (config.emit.reports) {
            reports_json["density_overlap"] = {
                {"t_rev", radial::density_overlap(grid, densities[0], densities[1])},
                {"t_sr_sixth", radial::density_overlap(grid, densities[0], densities[2])}};
        }
    }

    if (config.emit.reports) {
        io::write_json_file(config.out / "reports.json", reports_json);
        outputs.push_back("reports.json");
    }

    json manifest{{"artifact", "rydberg-revivals"},
                  {"version", constants::artifact_version},
                  {"config", config.to_json()},
                  {"time_scales", time_scales_json},
                  {"windows", windows_json},
                  {"outputs", outputs}};
    io::write_json_file(config.out / "manifest.json", manifest);
    return outcome;
}

SweepResult sweep(const SweepConfig& config) {
    std::vector<std::string> problems;
    if (config.axis != "nbar" && config.axis != "sigma" && config.axis != "delta") {
        problems.push_back("axis: must be one of nbar | sigma | delta");
    }
    if (config.values.empty()) {
        problems.push_back("values: at least one axis value required");
    }
    if (config.base.out.empty()) {
        problems.push_back("base.out: output directory must be set");
    }
    if (!problems.empty()) {
        throw ConfigError(std::move(problems));
    }

    std::error_code ec;
    std::filesystem::create_directories(config.base.out, ec);
    if (ec) {
        throw std::runtime_error("sweep: cannot create output directory " +
                                 config.base.out.string() + ": " + ec.message());
    }

    SweepResult result;
    std::string summary =
        "axis,value,status,t_cl_au,t_rev_au,t_sr_au,t_sr_sixth_au,t_sr_sixth_ns,"
        "revival_max,superrevival_sixth_max\n";
    json subdirs = json::array();

    for (const double value : config.values) {
        RunConfig cfg = config.base;
        if (config.axis == "nbar") {
            cfg.nbar = value;
        } else if (config.axis == "sigma") {
            cfg.sigma = value;
        } else {
            cfg.delta = value;
        }
        const std::string leaf = config.axis + "_" + io::format_double_short(value);
        cfg.out = config.base.out / leaf;
        subdirs.push_back(leaf);

        summary += config.axis + "," + io::format_double(value) + ",";
        try {
            const RunOutcome outcome = run(cfg);
            summary += "ok," + io::format_double(outcome.t_cl_au) + "," +
                       io::format_double(outcome.t_rev_au) + "," +
                       io::format_double(outcome.t_sr_au) + "," +
                       io::format_double(outcome.t_sr_au / 6.0) + ",";
            summary += cfg.emit.si_units
                           ? io::format_double(
                                 spectrum::to_si_seconds(outcome.t_sr_au / 6.0) * 1e9)
                           : std::string();
            summary += ",";
            summary += outcome.revival_max ? io::format_double(*outcome.revival_max)
                                           : std::string();
            summary += ",";
            summary += outcome.superrevival_sixth_max
                           ? io::format_double(*outcome.superrevival_sixth_max)
                           : std::string();
            summary += "\n";
        } catch (const std::exception& e) {
            ++result.failures;
            std::string reason = e.what();
            std::replace(reason.begin(), reason.end(), '\n', ' ');
            std::replace(reason.begin(), reason.end(), ',', ';');
            result.errors.push_back(config.axis + "=" +
                                    io::format_double_short(value) + ": " + reason);
            summary += "error: " + reason + ",,,,,,,\n";
        }
    }

    io::write_text_file(config.base.out / "sweep_summary.csv", summary);
    json values_json = json::array();
    for (const double v : config.values) {
        values_json.push_back(v);
    }
    io::write_json_file(config.base.out / "sweep_manifest.json",
                        {{"artifact", "rydberg-revivals"},
                         {"version", constants::artifact_version},
                         {"axis", config.axis},
                         {"values", values_json},
                         {"base", config.base.to_json()},
                         {"subdirectories", subdirs},
                         {"failures", result.failures},
                         {"errors", result.errors}});
    return result;
}

} // namespace rydberg::cli
