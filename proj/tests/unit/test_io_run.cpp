#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "rydberg/io.hpp"
#include "rydberg/packet.hpp"
#include "rydberg/run.hpp"
#include "rydberg/spectrum.hpp"

using namespace rydberg;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::path("unit_out") / name;
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json load(const fs::path& path) { return json::parse(slurp(path)); }

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ',')) {
            fields.push_back(field);
        }
        if (!line.empty() && line.back() == ',') {
            fields.emplace_back();
        }
        rows.push_back(std::move(fields));
    }
    return rows;
}

cli::RunConfig reference_config(const fs::path& out) {
    cli::RunConfig config;
    config.nbar = 45.0;
    config.sigma = 2.5;
    config.delta = 0.0;
    config.l = 1;
    config.windows.push_back({std::string("kepler"), 0.0, 0.0, 0.0});
    config.out = out;
    config.emit.series = true;
    config.emit.reports = false;
    config.emit.si_units = true;
    return config;
}

} // namespace

TEST_CASE("format_double: deterministic 17-digit formatting") {
    CHECK(io::format_double(1.0) == "1");
    CHECK(io::format_double(0.1) == "0.10000000000000001");
    CHECK(io::format_double(-2.5e-9) == "-2.5000000000000001e-09");
    CHECK(io::format_double_short(0.05) == "0.05");
    CHECK(io::format_double_short(36.0) == "36");
}

TEST_CASE("series CSV: header and shape") {
    const auto model = spectrum::EnergyModel::hydrogenic();
    const auto toy =
        packet::WeightDistribution::from_entries({{1, 0.5}, {2, 0.5}}, 1.5, 0.5, model);
    const auto series = packet::autocorrelation_series(model, toy, 0.0, 10.0, 1.0);
    const std::string csv = io::series_to_csv(series);
    const auto rows = parse_csv(csv);
    REQUIRE(rows.size() == 12); // header + 11 samples
    REQUIRE(rows[0] == std::vector<std::string>{"t_au", "re_A", "im_A", "abs_A"});
    CHECK(rows[1][0] == "0");
    CHECK(rows[1][1] == "1");
    CHECK(rows[1][2] == "0"); // no phase yet
    CHECK(rows[1][3] == "1");

    const json j = io::series_to_json(series);
    CHECK(j["weights"]["center"] == 1.5);
    CHECK(j["t_au"].size() == 11);
    CHECK(j["model"]["kind"] == "hydrogenic");
}

TEST_CASE("reports CSV: optional fields stay empty") {
    analysis::RevivalReport with_q;
    with_q.q = 3;
    with_q.center = 10.0;
    with_q.predicted_period = 2.0;
    with_q.measured_period = 1.9;
    with_q.relative_error = 0.05;
    with_q.peak_max = 0.8;
    analysis::RevivalReport bare;
    bare.center = 5.0;
    bare.peak_max = 0.9;
    const std::string csv = io::reports_to_csv({with_q, bare});
    const auto rows = parse_csv(csv);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == std::vector<std::string>{"q", "t_frac_pred", "T_frac_pred", "T_meas",
                                              "rel_err", "peak_max"});
    CHECK(rows[1][0] == "3");
    CHECK(rows[1][2] == "2");
    CHECK(rows[2][0] == "");
    CHECK(rows[2][2] == "");
    CHECK(rows[2][3] == "");
    CHECK(rows[2][4] == "");
    CHECK(rows[2][5] == io::format_double(0.9));
}

TEST_CASE("run config: JSON round trip and parse errors") {
    const json j = {{"nbar", 50.0},
                    {"sigma", 1.5},
                    {"delta", 0.05},
                    {"l", 2},
                    {"windows", {"kepler", {{"t_lo", 0.0}, {"t_hi", 100.0}, {"dt", 1.0}}}},
                    {"out", "somewhere"},
                    {"emit",
                     {{"series", false},
                      {"reports", true},
                      {"density_snapshots", false},
                      {"si_units", true}}}};
    const auto config = cli::RunConfig::from_json(j);
    CHECK(config.nbar == 50.0);
    CHECK(config.sigma == 1.5);
    CHECK(config.delta == 0.05);
    CHECK(config.l == 2);
    REQUIRE(config.windows.size() == 2);
    CHECK(config.windows[0].symbolic == "kepler");
    CHECK_FALSE(config.windows[1].symbolic.has_value());
    CHECK(config.windows[1].t_hi == 100.0);
    CHECK(config.emit.reports);
    CHECK(config.emit.si_units);

    const auto round_tripped = cli::RunConfig::from_json(config.to_json());
    CHECK(round_tripped.nbar == config.nbar);
    CHECK(round_tripped.windows.size() == config.windows.size());

    CHECK_THROWS_AS(cli::RunConfig::from_json(json{{"nbar", "wat"}}), cli::ConfigError);
    CHECK_THROWS_AS(cli::RunConfig::from_json(json::array()), cli::ConfigError);
    CHECK_THROWS_AS(cli::RunConfig::from_json(json{{"windows", {{{"t_lo", 0.0}}}}}),
                    cli::ConfigError);
}

TEST_CASE("run: itemized config validation") {
    cli::RunConfig config;
    config.nbar = 1.0;   // below the expansion-point bound
    config.sigma = -1.0; // invalid
    config.delta = 1.5;  // invalid
    config.l = -2;       // invalid
    config.windows.push_back({std::string("notawindow"), 0.0, 0.0, 0.0});
    config.windows.push_back({std::nullopt, 10.0, 5.0, -1.0});
    config.out = "unit_out/never_used";
    try {
        cli::run(config);
        FAIL("expected ConfigError");
    } catch (const cli::ConfigError& e) {
        const auto& items = e.items();
        REQUIRE(items.size() >= 6);
        const std::string all = e.what();
        for (const char* needle :
             {"sigma", "delta", "nbar", "l:", "notawindow", "windows[1]"}) {
            CAPTURE(needle);
            CHECK(all.find(needle) != std::string::npos);
        }
    }
}

TEST_CASE("run: manifest carries the nanosecond feasibility numbers") {
    const fs::path dir = fresh_dir("manifest_ns");
    cli::RunConfig config = reference_config(dir);
    config.nbar = 50.0;
    config.windows = {{std::string("superrevival_sixth"), 0.0, 0.0, 0.0}};
    cli::run(config);

    const json manifest = load(dir / "manifest.json");
    CHECK(manifest["artifact"] == "rydberg-revivals");
    const double ns = manifest["time_scales"]["si"]["t_sr_sixth_ns"].get<double>();
    CHECK(ns == doctest::Approx(3.9578902241068374).epsilon(1e-9));
    CHECK(fs::exists(dir / "series_superrevival_sixth.csv"));

    const auto outputs = manifest["outputs"].get<std::vector<std::string>>();
    REQUIRE(outputs.size() == 1);
    CHECK(outputs[0] == "series_superrevival_sixth.csv");

    cli::RunConfig cfg36 = reference_config(fresh_dir("manifest_ns36"));
    cfg36.nbar = 36.0;
    cfg36.windows.clear();
    cli::run(cfg36);
    const json m36 = load(cfg36.out / "manifest.json");
    CHECK(m36["time_scales"]["si"]["t_sr_sixth_ns"].get<double>() < 1.0);
}

TEST_CASE("run: empty window list emits only the manifest") {
    const fs::path dir = fresh_dir("manifest_only");
    cli::RunConfig config = reference_config(dir);
    config.windows.clear();
    cli::run(config);
    std::size_t count = 0;
    for (const auto& entry : fs::directory_iterator(dir)) {
        (void)entry;
        ++count;
    }
    CHECK(count == 1);
    CHECK(fs::exists(dir / "manifest.json"));
}

TEST_CASE("run: reruns are byte-identical") {
    const fs::path dir = fresh_dir("rerun_bytes");
    cli::RunConfig config = reference_config(dir);
    cli::run(config);
    const std::string manifest_a = slurp(dir / "manifest.json");
    const std::string series_a = slurp(dir / "series_kepler.csv");
    fs::remove_all(dir);
    cli::run(config);
    CHECK(slurp(dir / "manifest.json") == manifest_a);
    CHECK(slurp(dir / "series_kepler.csv") == series_a);
}

TEST_CASE("run: reports emit scan, contrast and predictions") {
    const fs::path dir = fresh_dir("with_reports");
    cli::RunConfig config = reference_config(dir);
    config.windows.clear();
    config.emit.series = false;
    config.emit.reports = true;
    const auto outcome = cli::run(config);
    REQUIRE(outcome.revival_max.has_value());
    CHECK(*outcome.revival_max == doctest::Approx(0.7075241673355861).epsilon(1e-8));
    REQUIRE(outcome.superrevival_sixth_max.has_value());
    CHECK(*outcome.superrevival_sixth_max ==
          doctest::Approx(0.774504667104113).epsilon(1e-8));

    const json reports = load(dir / "reports.json");
    REQUIRE(reports["scan"].size() == 4);
    CHECK(reports["scan"][0]["q"] == 3);
    CHECK(reports["scan"][3]["q"].is_null());
    CHECK(reports["contrast"]["degenerate"] == false);
    REQUIRE(reports["predicted_fractional_times"].size() == 3);
    const auto rows = parse_csv(slurp(dir / "reports.csv"));
    REQUIRE(rows.size() == 5); // header + q=3,6,9 + sixth window
}

TEST_CASE("run: density snapshots with sidecars") {
    const fs::path dir = fresh_dir("densities");
    cli::RunConfig config = reference_config(dir);
    config.windows.clear();
    config.emit.series = false;
    config.emit.reports = true;
    config.emit.density_snapshots = true;
    cli::run(config);
    for (const char* label : {"t0", "trev", "tsr6"}) {
        CHECK(fs::exists(dir / (std::string("density_") + label + ".csv")));
        const json sidecar = load(dir / (std::string("density_") + label + ".json"));
        CHECK(sidecar["l"] == 1);
        CHECK(sidecar["weights"]["sigma"] == 2.5);
    }
    const auto rows = parse_csv(slurp(dir / "density_t0.csv"));
    REQUIRE(rows.size() > 1000);
    CHECK(rows[0] == std::vector<std::string>{"r", "density"});
    const json reports = load(dir / "reports.json");
    CHECK(reports["density_overlap"]["t_rev"].get<double>() ==
          doctest::Approx(0.2922005923520714).epsilon(1e-6));
}

TEST_CASE("sweep: delta axis reproduces the shifted hydrogenic time scales") {
    const fs::path dir = fresh_dir("sweep_delta");
    cli::SweepConfig sweep;
    sweep.base = reference_config(dir);
    sweep.base.windows.clear();
    sweep.base.emit.si_units = false;
    sweep.axis = "delta";
    sweep.values = {0.0, 0.05, 0.5};
    const auto result = cli::sweep(sweep);
    CHECK(result.failures == 0);
    for (const char* leaf : {"delta_0", "delta_0.05", "delta_0.5"}) {
        CHECK(fs::exists(dir / leaf / "manifest.json"));
    }
    const auto rows = parse_csv(slurp(dir / "sweep_summary.csv"));
    REQUIRE(rows.size() == 4);
    for (std::size_t i = 0; i < 3; ++i) {
        const double delta = sweep.values[i];
        const auto ts = spectrum::time_scales(spectrum::EnergyModel::hydrogenic(),
                                              {45.0 - delta});
        CHECK(rows[i + 1][2] == "ok");
        CHECK(rows[i + 1][3] == io::format_double(ts.t_cl));
        CHECK(rows[i + 1][4] == io::format_double(ts.t_rev));
    }
}

TEST_CASE("sweep: nbar axis records nanosecond delays") {
    const fs::path dir = fresh_dir("sweep_nbar");
    cli::SweepConfig sweep;
    sweep.base = reference_config(dir);
    sweep.base.windows.clear();
    sweep.axis = "nbar";
    sweep.values = {36.0, 45.0, 50.0};
    const auto result = cli::sweep(sweep);
    CHECK(result.failures == 0);
    const auto rows = parse_csv(slurp(dir / "sweep_summary.csv"));
    REQUIRE(rows.size() == 4);
    const std::vector<double> expected_ns = {0.7658191580144753, 2.337094598432847,
                                             3.9578902241068374};
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(std::stod(rows[i + 1][7]) == doctest::Approx(expected_ns[i]).epsilon(1e-9));
    }
}

TEST_CASE("sweep: sigma axis records the superrevival contrast") {
    const fs::path dir = fresh_dir("sweep_sigma");
    cli::SweepConfig sweep;
    sweep.base = reference_config(dir);
    sweep.base.windows.clear();
    sweep.base.emit.series = false;
    sweep.base.emit.reports = true;
    sweep.axis = "sigma";
    sweep.values = {1.5, 2.5, 3.5};
    const auto result = cli::sweep(sweep);
    CHECK(result.failures == 0);
    const auto rows = parse_csv(slurp(dir / "sweep_summary.csv"));
    REQUIRE(rows.size() == 4);
    const std::vector<double> expected_revival = {0.8475559998967932, 0.7075241673355861,
                                                  0.5942039321045592};
    const std::vector<double> expected_sixth = {0.9434838654293692, 0.774504667104113,
                                                0.6411491971106992};
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(std::stod(rows[i + 1][8]) ==
              doctest::Approx(expected_revival[i]).epsilon(1e-8));
        CHECK(std::stod(rows[i + 1][9]) ==
              doctest::Approx(expected_sixth[i]).epsilon(1e-8));
    }
}

TEST_CASE("sweep: failures are recorded per value") {
    const fs::path dir = fresh_dir("sweep_partial");
    cli::SweepConfig sweep;
    sweep.base = reference_config(dir);
    sweep.base.windows.clear();
    sweep.axis = "nbar";
    sweep.values = {45.0, 1.0}; // second value violates the expansion-point bound
    const auto result = cli::sweep(sweep);
    CHECK(result.failures == 1);
    REQUIRE(result.errors.size() == 1);
    CHECK(result.errors[0].find("nbar=1") != std::string::npos);
    const auto rows = parse_csv(slurp(dir / "sweep_summary.csv"));
    REQUIRE(rows.size() == 3);
    CHECK(rows[1][2] == "ok");
    CHECK(rows[2][2].rfind("error", 0) == 0);
    const json manifest = load(dir / "sweep_manifest.json");
    CHECK(manifest["failures"] == 1);
}

TEST_CASE("sweep: axis validation") {
    cli::SweepConfig sweep;
    sweep.base = reference_config("unit_out/never");
    sweep.axis = "bogus";
    sweep.values = {1.0};
    CHECK_THROWS_AS(cli::sweep(sweep), cli::ConfigError);

    CHECK_THROWS_AS(cli::SweepConfig::from_json(json{{"axis", "nbar"}}), cli::ConfigError);
}
