#pragma once

#include <optional>
#include <span>
#include <vector>

#include "rydberg/packet.hpp"
#include "rydberg/spectrum.hpp"

namespace rydberg::analysis {

struct PeakTrain {
    std::vector<double> times;   // strictly increasing
    std::vector<double> heights;
    double min_height = 0.0;
    double min_separation = 0.0;
};

/// Local maxima of a uniformly sampled signal above min_height, refined by
/// 3-point parabolic interpolation (refinement never moves a peak by more
/// than dt/2). Boundary samples count as peaks when the signal falls away
/// from them. No two returned peaks are closer than min_separation; when
/// candidates collide the taller one wins. Requires min_separation >= 2*dt.
PeakTrain find_peaks(std::span<const double> values, double t_start, double dt,
                     double min_height, double min_separation);

struct PeriodEstimate {
    double period;     // median of consecutive peak spacings
    double dispersion; // median absolute deviation of the spacings
    int spacing_count;
};

/// Robust period from a peak train; requires at least 3 peaks.
PeriodEstimate estimate_period(const PeakTrain& train);

/// One scanned window. q is empty for the plain superrevival window around
/// t_sr/6 (no period prediction attached). relative_error is
/// |measured - predicted| / predicted when both periods are present.
struct RevivalReport {
    std::optional<int> q;
    double center = 0.0; // scanned t_frac
    double t_lo = 0.0;
    double t_hi = 0.0;
    std::optional<double> predicted_period;
    std::optional<double> measured_period;
    std::optional<double> relative_error;
    std::optional<double> period_dispersion;
    double peak_max = 0.0; // max |A| in the window
    int peak_count = 0;
    bool sufficient_structure = false; // >= 3 peaks found
};

struct ScanSettings {
    std::vector<int> qs = {3, 6, 9};
    double min_height = 0.1;
    /// Fraction of the predicted local period used as minimum peak
    /// separation. 0.6 rather than 0.5: |A| crest trains carry structural
    /// sub-peaks at half the predicted period (the quadratic phase advance
    /// over t_rev/2 is linear in n-nbar, a pure Kepler shift), and those
    /// sit just above half the prediction.
    double separation_factor = 0.6;
    double window_half_periods = 1.5;
};

/// For each q: sample |A| over t_sr/q +- 1.5 * T_frac with
/// T_frac = (3/q) t_rev, measure the local period, and report it against
/// the prediction. A final entry (q empty) covers the window
/// t_sr/6 +- t_rev/4 and records the maximum |A| there.
std::vector<RevivalReport> superrevival_scan(const spectrum::EnergyModel& model,
                                             const packet::WeightDistribution& weights,
                                             const spectrum::ExpansionPoint& point,
                                             const ScanSettings& settings = {});

struct ContrastComparison {
    double revival_max;      // max |A| in t_rev +- nu T_cl / 10
    double superrevival_max; // max |A| in t_sr/6 +- t_rev / 4
    bool degenerate;         // single-line distribution, |A| == 1 throughout
};

/// Maximum |A| near the full revival versus near t_sr/6.
ContrastComparison compare_revival_vs_superrevival(const spectrum::EnergyModel& model,
                                                   const packet::WeightDistribution& weights,
                                                   const spectrum::ExpansionPoint& point);

struct FractionalPrediction {
    int q;
    double t_frac; // t_sr / q
    double T_frac; // (3/q) t_rev
};

/// Predicted fractional-superrevival times and periods for q = 3, 6, ...
/// up to q_max (q_max >= 3).
std::vector<FractionalPrediction> predicted_fractional_times(const spectrum::TimeScales& ts,
                                                             int q_max);

} // namespace rydberg::analysis
