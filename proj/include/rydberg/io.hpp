#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "rydberg/analysis.hpp"
#include "rydberg/packet.hpp"
#include "rydberg/radial.hpp"

namespace rydberg::io {

/// Locale-independent decimal formatting with 17 significant digits; the
/// one formatter behind every CSV field, so identical inputs give
/// byte-identical files.
std::string format_double(double value);

/// Shortest round-trip formatting, for labels and directory names.
std::string format_double_short(double value);

void write_text_file(const std::filesystem::path& path, const std::string& content);

/// CSV with header `t_au,re_A,im_A,abs_A`.
std::string series_to_csv(const packet::AutocorrelationSeries& series);
void write_series_csv(const std::filesystem::path& path,
                      const packet::AutocorrelationSeries& series);

/// JSON document embedding the generating parameters alongside the samples.
nlohmann::json series_to_json(const packet::AutocorrelationSeries& series);

nlohmann::json report_to_json(const analysis::RevivalReport& report);
nlohmann::json reports_to_json(const std::vector<analysis::RevivalReport>& reports);

/// Flat CSV with header `q,t_frac_pred,T_frac_pred,T_meas,rel_err,peak_max`;
/// optional fields are left empty.
std::string reports_to_csv(const std::vector<analysis::RevivalReport>& reports);

/// CSV with header `r,density`.
std::string density_to_csv(const radial::RadialGrid& grid,
                           const std::vector<double>& density);

nlohmann::json model_to_json(const spectrum::EnergyModel& model);
nlohmann::json weights_to_json(const packet::WeightDistribution& weights);

/// Serialize with sorted keys, 2-space indent, trailing newline.
std::string dump_json(const nlohmann::json& j);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

} // namespace rydberg::io
