#include "rydberg/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace rydberg::analysis {

namespace {

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t m = values.size() / 2;
    if (values.size() % 2 == 1) {
        return values[m];
    }
    return 0.5 * (values[m - 1] + values[m]);
}

struct Candidate {
    double height;
    double time;
};

/// Windows whose |A| range is below this are treated as structureless:
/// a single-line packet keeps |A| = 1 up to rounding, and the ~1e-16
/// wiggles must not register as revival peaks.
constexpr double kFlatSignalRange = 1e-9;

/// Max |A| over an explicitly sampled window.
double window_max(const packet::AutocorrelationSeries& series) {
    double best = 0.0;
    for (const auto& v : series.values) {
        best = std::max(best, std::abs(v));
    }
    return best;
}

std::vector<double> abs_values(const packet::AutocorrelationSeries& series) {
    std::vector<double> out;
    out.reserve(series.values.size());
    for (const auto& v : series.values) {
        out.push_back(std::abs(v));
    }
    return out;
}

/// Scan one window, measure the local period against a prediction.
RevivalReport scan_window(const spectrum::EnergyModel& model,
                          const packet::WeightDistribution& weights,
                          std::optional<int> q, double center, double half_width,
                          double dt, std::optional<double> predicted_period,
                          double separation_reference, const ScanSettings& settings) {
    RevivalReport report;
    report.q = q;
    report.center = center;
    report.t_lo = std::max(0.0, center - half_width);
    report.t_hi = center + half_width;
    report.predicted_period = predicted_period;

    const auto series =
        packet::autocorrelation_series(model, weights, report.t_lo, report.t_hi, dt);
    const std::vector<double> magnitude = abs_values(series);
    report.peak_max = window_max(series);

    const auto [lo_it, hi_it] = std::minmax_element(magnitude.begin(), magnitude.end());
    if (*hi_it - *lo_it < kFlatSignalRange) {
        return report;
    }

    const PeakTrain train =
        find_peaks(magnitude, report.t_lo, dt, settings.min_height,
                   settings.separation_factor * separation_reference);
    report.peak_count = static_cast<int>(train.times.size());
    report.sufficient_structure = train.times.size() >= 3;
    if (report.sufficient_structure) {
        const PeriodEstimate estimate = estimate_period(train);
        report.measured_period = estimate.period;
        report.period_dispersion = estimate.dispersion;
        if (predicted_period) {
            report.relative_error =
                std::fabs(estimate.period - *predicted_period) / *predicted_period;
        }
    }
    return report;
}

} // namespace

PeakTrain find_peaks(std::span<const double> values, double t_start, double dt,
                     double min_height, double min_separation) {
    if (values.empty()) {
        throw std::invalid_argument("analysis: empty signal");
    }
    if (!(dt > 0.0)) {
        throw std::invalid_argument("analysis: dt must be positive");
    }
    if (!(min_separation >= 2.0 * dt)) {
        throw std::invalid_argument("analysis: min_separation below 2*dt, sampling too coarse");
    }

    const std::size_t count = values.size();
    std::vector<Candidate> candidates;
    for (std::size_t i = 0; i < count; ++i) {
        const double y = values[i];
        if (y < min_height) {
            continue;
        }
        const double left = i > 0 ? values[i - 1] : -std::numeric_limits<double>::infinity();
        const double right =
            i + 1 < count ? values[i + 1] : -std::numeric_limits<double>::infinity();
        const bool interior = i > 0 && i + 1 < count;
        const bool is_peak =
            interior ? (y > left && y >= right) : (i == 0 ? y > right : y > left);
        if (!is_peak) {
            continue;
        }
        double time = t_start + static_cast<double>(i) * dt;
        if (interior) {
            // parabolic vertex through the three samples; the offset is
            // bounded by half a sample for a genuine local maximum. Only
            // the time is refined: the reported height stays the sample
            // value, so heights sourced from |A| never exceed its bound.
            const double denom = left - 2.0 * y + right;
            double offset = denom == 0.0 ? 0.0 : 0.5 * (left - right) / denom;
            offset = std::clamp(offset, -0.5, 0.5);
            time = t_start + (static_cast<double>(i) + offset) * dt;
        }
        candidates.push_back({y, time});
    }

    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.height != b.height) {
            return a.height > b.height;
        }
        return a.time < b.time;
    });

    std::vector<Candidate> kept;
    for (const auto& cand : candidates) {
        const bool clear = std::none_of(kept.begin(), kept.end(), [&](const Candidate& k) {
            return std::fabs(cand.time - k.time) < min_separation;
        });
        if (clear) {
            kept.push_back(cand);
        }
    }
    std::sort(kept.begin(), kept.end(),
              [](const Candidate& a, const Candidate& b) { return a.time < b.time; });

    PeakTrain train;
    train.min_height = min_height;
    train.min_separation = min_separation;
    train.times.reserve(kept.size());
    train.heights.reserve(kept.size());
    for (const auto& k : kept) {
        train.times.push_back(k.time);
        train.heights.push_back(k.height);
    }
    return train;
}

PeriodEstimate estimate_period(const PeakTrain& train) {
    if (train.times.size() < 3) {
        throw std::invalid_argument("analysis: period estimate needs at least 3 peaks, got " +
                                    std::to_string(train.times.size()));
    }
    std::vector<double> spacings;
    spacings.reserve(train.times.size() - 1);
    for (std::size_t i = 1; i < train.times.size(); ++i) {
        spacings.push_back(train.times[i] - train.times[i - 1]);
    }
    const double period = median(spacings);
    std::vector<double> deviations;
    deviations.reserve(spacings.size());
    for (const double s : spacings) {
        deviations.push_back(std::fabs(s - period));
    }
    return {period, median(deviations), static_cast<int>(spacings.size())};
}

std::vector<RevivalReport> superrevival_scan(const spectrum::EnergyModel& model,
                                             const packet::WeightDistribution& weights,
                                             const spectrum::ExpansionPoint& point,
                                             const ScanSettings& settings) {
    const spectrum::TimeScales ts = spectrum::time_scales(model, point);

    std::vector<int> qs = settings.qs;
    std::sort(qs.begin(), qs.end());
    qs.erase(std::unique(qs.begin(), qs.end()), qs.end());

    std::vector<RevivalReport> reports;
    reports.reserve(qs.size() + 1);
    for (const int q : qs) {
        if (q < 1) {
            throw std::invalid_argument("analysis: q must be positive");
        }
        const double t_frac = ts.t_sr / q;
        const double T_frac = 3.0 / q * ts.t_rev;
        const double dt = std::min(T_frac / 200.0, ts.t_cl / 32.0);
        reports.push_back(scan_window(model, weights, q, t_frac,
                                      settings.window_half_periods * T_frac, dt, T_frac,
                                      T_frac, settings));
    }

    // plain superrevival window: capture max |A| around t_sr/6 with the
    // wider sampling used by the revival/superrevival comparison
    reports.push_back(scan_window(model, weights, std::nullopt, ts.t_sr / 6.0, ts.t_rev / 4.0,
                                  ts.t_cl / 100.0, std::nullopt, 0.5 * ts.t_rev, settings));
    return reports;
}

ContrastComparison compare_revival_vs_superrevival(const spectrum::EnergyModel& model,
                                                   const packet::WeightDistribution& weights,
                                                   const spectrum::ExpansionPoint& point) {
    const spectrum::TimeScales ts = spectrum::time_scales(model, point);
    const double dt = ts.t_cl / 100.0;

    const double revival_half = point.nu * ts.t_cl / 10.0;
    const auto revival = packet::autocorrelation_series(
        model, weights, std::max(0.0, ts.t_rev - revival_half), ts.t_rev + revival_half, dt);

    const double sixth = ts.t_sr / 6.0;
    const auto superrevival = packet::autocorrelation_series(
        model, weights, sixth - ts.t_rev / 4.0, sixth + ts.t_rev / 4.0, dt);

    return {window_max(revival), window_max(superrevival), weights.entries.size() < 2};
}

std::vector<FractionalPrediction> predicted_fractional_times(const spectrum::TimeScales& ts,
                                                             int q_max) {
    if (q_max < 3) {
        throw std::invalid_argument("analysis: q_max must be at least 3");
    }
    std::vector<FractionalPrediction> predictions;
    for (int q = 3; q <= q_max; q += 3) {
        predictions.push_back({q, ts.t_sr / q, 3.0 / q * ts.t_rev});
    }
    return predictions;
}

} // namespace rydberg::analysis
