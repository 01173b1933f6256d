#include "rydberg/io.hpp"

#include <charconv>
#include <complex>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace rydberg::io {

std::string format_double(double value) {
    char buf[64];
    const auto result =
        std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    if (result.ec != std::errc()) {
        throw std::runtime_error("io: failed to format a double");
    }
    return {buf, result.ptr};
}

std::string format_double_short(double value) {
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof(buf), value);
    if (result.ec != std::errc()) {
        throw std::runtime_error("io: failed to format a double");
    }
    return {buf, result.ptr};
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("io: cannot open " + path.string() + " for writing");
    }
    out << content;
    if (!out) {
        throw std::runtime_error("io: write failed for " + path.string());
    }
}

std::string series_to_csv(const packet::AutocorrelationSeries& series) {
    std::string csv = "t_au,re_A,im_A,abs_A\n";
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        const std::complex<double> v = series.values[i];
        csv += format_double(series.times[i]);
        csv += ',';
        csv += format_double(v.real());
        csv += ',';
        csv += format_double(v.imag());
        csv += ',';
        csv += format_double(std::abs(v));
        csv += '\n';
    }
    return csv;
}

void write_series_csv(const std::filesystem::path& path,
                      const packet::AutocorrelationSeries& series) {
    write_text_file(path, series_to_csv(series));
}

nlohmann::json model_to_json(const spectrum::EnergyModel& model) {
    return {{"kind", model.kind == spectrum::EnergyLaw::hydrogenic ? "hydrogenic"
                                                                   : "quantum_defect"},
            {"delta", model.delta}};
}

nlohmann::json weights_to_json(const packet::WeightDistribution& weights) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [n, w] : weights.entries) {
        entries.push_back({{"n", n}, {"w", w}});
    }
    return {{"center", weights.center}, {"sigma", weights.sigma}, {"entries", entries}};
}

nlohmann::json series_to_json(const packet::AutocorrelationSeries& series) {
    nlohmann::json t = nlohmann::json::array();
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    nlohmann::json mag = nlohmann::json::array();
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        t.push_back(series.times[i]);
        re.push_back(series.values[i].real());
        im.push_back(series.values[i].imag());
        mag.push_back(std::abs(series.values[i]));
    }
    return {{"model", model_to_json(series.model)},
            {"weights", weights_to_json(series.weights)},
            {"t_start", series.t_start},
            {"dt", series.dt},
            {"t_au", t},
            {"re_A", re},
            {"im_A", im},
            {"abs_A", mag}};
}

nlohmann::json report_to_json(const analysis::RevivalReport& report) {
    nlohmann::json j{{"center_au", report.center},
                     {"t_lo_au", report.t_lo},
                     {"t_hi_au", report.t_hi},
                     {"peak_max", report.peak_max},
                     {"peak_count", report.peak_count},
                     {"sufficient_structure", report.sufficient_structure}};
    j["q"] = report.q ? nlohmann::json(*report.q) : nlohmann::json();
    j["predicted_period_au"] =
        report.predicted_period ? nlohmann::json(*report.predicted_period) : nlohmann::json();
    j["measured_period_au"] =
        report.measured_period ? nlohmann::json(*report.measured_period) : nlohmann::json();
    j["relative_error"] =
        report.relative_error ? nlohmann::json(*report.relative_error) : nlohmann::json();
    j["period_dispersion_au"] =
        report.period_dispersion ? nlohmann::json(*report.period_dispersion) : nlohmann::json();
    return j;
}

nlohmann::json reports_to_json(const std::vector<analysis::RevivalReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& report : reports) {
        arr.push_back(report_to_json(report));
    }
    return arr;
}

std::string reports_to_csv(const std::vector<analysis::RevivalReport>& reports) {
    std::string csv = "q,t_frac_pred,T_frac_pred,T_meas,rel_err,peak_max\n";
    for (const auto& report : reports) {
        csv += report.q ? std::to_string(*report.q) : std::string();
        csv += ',';
        csv += format_double(report.center);
        csv += ',';
        csv += report.predicted_period ? format_double(*report.predicted_period) : std::string();
        csv += ',';
        csv += report.measured_period ? format_double(*report.measured_period) : std::string();
        csv += ',';
        csv += report.relative_error ? format_double(*report.relative_error) : std::string();
        csv += ',';
        csv += format_double(report.peak_max);
        csv += '\n';
    }
    return csv;
}

std::string density_to_csv(const radial::RadialGrid& grid, const std::vector<double>& density) {
    if (density.size() != grid.r.size()) {
        throw std::invalid_argument("io: density size does not match the grid");
    }
    std::string csv = "r,density\n";
    for (std::size_t i = 0; i < density.size(); ++i) {
        csv += format_double(grid.r[i]);
        csv += ',';
        csv += format_double(density[i]);
        csv += '\n';
    }
    return csv;
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
    write_text_file(path, dump_json(j));
}

} // namespace rydberg::io
