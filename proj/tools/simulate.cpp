// Command-line driver: turns a JSON run/sweep description into series,
// report and density files. Exit codes: 0 success, 1 configuration or I/O
// error, 2 partial sweep failure.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rydberg/run.hpp"

namespace {

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw rydberg::cli::ConfigError({"cannot open config file '" + path + "'"});
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw rydberg::cli::ConfigError({"config file '" + path + "' is not valid JSON: " +
                                         e.what()});
    }
    return j;
}

struct Overrides {
    std::optional<double> nbar;
    std::optional<double> sigma;
    std::optional<double> delta;
    std::optional<int> l;
    std::vector<std::string> windows;
    std::optional<std::string> out;
    bool si = false;

    void apply(rydberg::cli::RunConfig& config) const {
        if (nbar) config.nbar = *nbar;
        if (sigma) config.sigma = *sigma;
        if (delta) config.delta = *delta;
        if (l) config.l = *l;
        if (out) config.out = *out;
        if (!windows.empty()) {
            config.windows.clear();
            for (const auto& name : windows) {
                config.windows.push_back({name, 0.0, 0.0, 0.0});
            }
        }
        if (si) config.emit.si_units = true;
    }

    void attach(CLI::App* cmd) {
        cmd->add_option("--nbar", nbar, "mean principal quantum number (or noninteger N*)");
        cmd->add_option("--sigma", sigma, "packet width in units of n");
        cmd->add_option("--delta", delta, "quantum defect in [0, 1)");
        cmd->add_option("--l", l, "orbital quantum number of the packet");
        cmd->add_option("--window", windows,
                        "symbolic window (repeatable; replaces the config's window list)");
        cmd->add_option("--out", out, "output directory");
        cmd->add_flag("--si", si, "also report time scales in seconds");
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rydberg wave-packet revival and superrevival simulator"};
    app.require_subcommand(1);

    std::string run_config_path;
    Overrides overrides;
    CLI::App* run_cmd = app.add_subcommand("run", "execute a single run");
    run_cmd->add_option("config", run_config_path, "run configuration JSON")->required();
    overrides.attach(run_cmd);

    std::string sweep_config_path;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "execute a parameter sweep");
    sweep_cmd->add_option("config", sweep_config_path, "sweep configuration JSON")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            rydberg::cli::RunConfig config =
                rydberg::cli::RunConfig::from_json(load_json(run_config_path));
            overrides.apply(config);
            const auto outcome = rydberg::cli::run(config);
            std::printf("run complete: out=%s t_cl=%.6g au, t_rev=%.6g au, t_sr=%.6g au\n",
                        config.out.string().c_str(), outcome.t_cl_au, outcome.t_rev_au,
                        outcome.t_sr_au);
            return 0;
        }
        rydberg::cli::SweepConfig config =
            rydberg::cli::SweepConfig::from_json(load_json(sweep_config_path));
        const auto result = rydberg::cli::sweep(config);
        if (result.failures > 0) {
            std::fprintf(stderr, "sweep finished with %d failed value(s):\n", result.failures);
            for (const auto& err : result.errors) {
                std::fprintf(stderr, "  %s\n", err.c_str());
            }
            return 2;
        }
        std::printf("sweep complete: out=%s values=%zu\n",
                    config.base.out.string().c_str(), config.values.size());
        return 0;
    } catch (const rydberg::cli::ConfigError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
