#include "rydberg/packet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rydberg/constants.hpp"
#include "rydberg/phase.hpp"

namespace rydberg::packet {

namespace {

constexpr double kNormTolerance = 1e-12;

void validate(const WeightDistribution& dist, const spectrum::EnergyModel& model) {
    if (dist.entries.empty()) {
        throw std::invalid_argument("packet: weight distribution has no entries");
    }
    double sum = 0.0;
    int prev_n = 0;
    for (const auto& [n, w] : dist.entries) {
        if (n < 1) {
            throw std::invalid_argument("packet: principal quantum numbers must be >= 1");
        }
        if (n <= prev_n) {
            throw std::invalid_argument("packet: entries must be sorted by n and unique");
        }
        if (!(w >= 0.0)) {
            throw std::invalid_argument("packet: populations must be nonnegative");
        }
        if (!(n - model.delta > 0.0)) {
            throw std::invalid_argument("packet: n - delta must be positive over the support");
        }
        prev_n = n;
        sum += w;
    }
    if (std::fabs(sum - 1.0) > kNormTolerance) {
        throw std::invalid_argument("packet: populations must sum to 1, got " +
                                    std::to_string(sum));
    }
    if (!(dist.center - model.delta > 0.0)) {
        throw std::invalid_argument("packet: center - delta must be positive");
    }
}

/// Kepler period at the distribution center, used for the sampling guard.
/// Matches 2*pi/|E'(center)| whenever the center is a valid expansion point
/// and stays defined for toy distributions centered below nu - delta = 2.
double guard_kepler_period(const spectrum::EnergyModel& model, const WeightDistribution& w) {
    const double x = w.center - model.delta;
    return constants::two_pi * x * x * x;
}

} // namespace

WeightDistribution WeightDistribution::from_entries(std::vector<WeightEntry> entries,
                                                    double center, double sigma,
                                                    const spectrum::EnergyModel& model) {
    WeightDistribution dist{std::move(entries), center, sigma};
    validate(dist, model);
    return dist;
}

WeightDistribution gaussian_weights(double center, double sigma, double cutoff) {
    if (!(sigma > 0.0)) {
        throw std::invalid_argument("packet: sigma must be positive");
    }
    if (!(cutoff >= 3.0)) {
        throw std::invalid_argument("packet: cutoff must be at least 3 sigmas");
    }
    if (!(std::fabs(center) + cutoff * sigma < 1e9)) {
        throw std::invalid_argument("packet: support window out of range");
    }
    const int lo = std::max(1, static_cast<int>(std::ceil(center - cutoff * sigma)));
    const int hi = static_cast<int>(std::floor(center + cutoff * sigma));
    if (hi < lo) {
        throw std::invalid_argument("packet: no integer n within center +- cutoff*sigma "
                                    "with n >= 1 (empty support)");
    }

    WeightDistribution dist;
    dist.center = center;
    dist.sigma = sigma;
    dist.entries.reserve(static_cast<std::size_t>(hi - lo + 1));

    // shift exponents by the smallest (n-center)^2 so narrow distributions
    // cannot underflow to an all-zero sum
    double d2_min = 0.0;
    bool first = true;
    for (int n = lo; n <= hi; ++n) {
        const double d = n - center;
        d2_min = first ? d * d : std::min(d2_min, d * d);
        first = false;
    }
    double sum = 0.0;
    for (int n = lo; n <= hi; ++n) {
        const double d = n - center;
        const double w = std::exp(-(d * d - d2_min) / (2.0 * sigma * sigma));
        dist.entries.push_back({n, w});
        sum += w;
    }
    for (auto& entry : dist.entries) {
        entry.w /= sum;
    }
    return dist;
}

std::complex<double> autocorrelation(const spectrum::EnergyModel& model,
                                     const WeightDistribution& weights, double t) {
    validate(weights, model);
    double re = 0.0;
    double im = 0.0;
    for (const auto& [n, w] : weights.entries) {
        const double phi = phase::reduce_product_mod_2pi(spectrum::energy(model, n), t);
        re += w * std::cos(phi);
        im -= w * std::sin(phi);
    }
    return {re, im};
}

AutocorrelationSeries autocorrelation_series(const spectrum::EnergyModel& model,
                                             const WeightDistribution& weights,
                                             double t_start, double t_end, double dt) {
    validate(weights, model);
    if (!(t_end >= t_start)) {
        throw std::invalid_argument("packet: t_end must not precede t_start");
    }
    if (!(dt > 0.0)) {
        throw std::invalid_argument("packet: dt must be positive");
    }
    const double t_cl = guard_kepler_period(model, weights);
    if (!(dt < t_cl / 20.0)) {
        throw std::invalid_argument("packet: sampling too coarse, dt must be below T_cl/20 = " +
                                    std::to_string(t_cl / 20.0));
    }

    const auto count = static_cast<std::size_t>(std::floor((t_end - t_start) / dt)) + 1;
    AutocorrelationSeries series;
    series.t_start = t_start;
    series.dt = dt;
    series.model = model;
    series.weights = weights;
    series.times.reserve(count);
    series.values.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = t_start + static_cast<double>(i) * dt;
        series.times.push_back(t);
        series.values.push_back(autocorrelation(model, weights, t));
    }
    return series;
}

PhaseExpansionTerms phase_expansion_terms(const spectrum::EnergyModel& model,
                                          const spectrum::ExpansionPoint& point,
                                          int n, double t) {
    const spectrum::EnergyDerivatives d = spectrum::energy_derivatives(model, point);
    const double k = static_cast<double>(n) - point.nu;
    const double theta1 = d.first * k * t;
    const double theta2 = 0.5 * d.second * (k * k) * t;
    const double theta3 = d.third / 6.0 * (k * k * k) * t;
    const double exact = (spectrum::energy(model, n) - spectrum::energy(model, point.nu)) * t;
    const double residual = exact - theta1 - theta2 - theta3;
    return {theta1, theta2, theta3, residual};
}

} // namespace rydberg::packet
