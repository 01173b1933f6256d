#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace rydberg::cli {

/// Aggregated configuration failure: every offending field is itemized.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(std::vector<std::string> items);
    const std::vector<std::string>& items() const { return items_; }

  private:
    std::vector<std::string> items_;
};

/// Either a symbolic window name ("kepler", "revival", "superrevival_q3",
/// "superrevival_q6", "superrevival_q9", "superrevival_sixth") or explicit
/// bounds with a sampling step.
struct WindowSpec {
    std::optional<std::string> symbolic;
    double t_lo = 0.0;
    double t_hi = 0.0;
    double dt = 0.0;
};

struct EmitFlags {
    bool series = true;
    bool reports = false;
    bool density_snapshots = false;
    bool si_units = false;
};

struct RunConfig {
    double nbar = 45.0;
    double sigma = 2.5;
    double delta = 0.0;
    int l = 1;
    std::vector<WindowSpec> windows;
    std::filesystem::path out;
    EmitFlags emit;

    static RunConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

struct SweepConfig {
    RunConfig base;
    std::string axis; // one of nbar | sigma | delta
    std::vector<double> values;

    static SweepConfig from_json(const nlohmann::json& j);
};

struct ResolvedWindow {
    std::string label;
    double t_lo;
    double t_hi;
    double dt;
};

/// Resolve a window spec against the run's time scales; symbolic presets:
///   kepler              [0, 5 T_cl]               dt = T_cl/200
///   revival             t_rev +- nbar T_cl/10     dt = T_cl/100
///   superrevival_qN     t_sr/N +- 1.5 T_frac      dt = min(T_frac/200, T_cl/32)
///   superrevival_sixth  t_sr/6 +- t_rev/4         dt = T_cl/100
ResolvedWindow resolve_window(const WindowSpec& spec, const RunConfig& config,
                              std::size_t index);

struct RunOutcome {
    double t_cl_au = 0.0;
    double t_rev_au = 0.0;
    double t_sr_au = 0.0;
    std::optional<double> revival_max;            // present when reports were emitted
    std::optional<double> superrevival_sixth_max; // present when reports were emitted
};

/// Execute a run: validates the config (throwing ConfigError with itemized
/// problems), then writes a manifest plus the requested series, report and
/// density files into config.out. Identical configs produce byte-identical
/// outputs. Throws std::runtime_error on I/O failure.
RunOutcome run(const RunConfig& config);

struct SweepResult {
    int failures = 0;
    std::vector<std::string> errors; // one entry per failed axis value
};

/// Execute one run per axis value in its own subdirectory and write a merged
/// summary CSV. Failures are recorded per value; the caller maps a nonzero
/// failure count to exit status 2.
SweepResult sweep(const SweepConfig& config);

} // namespace rydberg::cli
