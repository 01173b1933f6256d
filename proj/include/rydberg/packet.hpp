#pragma once

#include <complex>
#include <vector>

#include "rydberg/spectrum.hpp"

namespace rydberg::packet {

struct WeightEntry {
    int n;    // principal quantum number, >= 1
    double w; // |c_n|^2, >= 0
};

/// Populations |c_n|^2 over integer principal quantum numbers.
/// Entries are sorted by n, unique, and sum to 1 (within 1e-12).
struct WeightDistribution {
    std::vector<WeightEntry> entries;
    double center = 0.0; // nbar or N*
    double sigma = 0.0;  // width in units of n

    /// Validating constructor for hand-built distributions (toy models).
    static WeightDistribution from_entries(std::vector<WeightEntry> entries,
                                           double center, double sigma,
                                           const spectrum::EnergyModel& model);
};

/// Gaussian populations w_n proportional to exp(-(n-center)^2 / (2 sigma^2))
/// for integer n within center +- cutoff*sigma and n >= 1, renormalized.
/// Throws std::invalid_argument for sigma <= 0, cutoff < 3, or empty support.
WeightDistribution gaussian_weights(double center, double sigma, double cutoff = 5.0);

/// A(t) = sum_n w_n exp(-i E_n t) with exact energies; each per-term phase
/// is reduced mod 2*pi before evaluation so accuracy holds out to t ~ t_sr.
std::complex<double> autocorrelation(const spectrum::EnergyModel& model,
                                     const WeightDistribution& weights, double t);

struct AutocorrelationSeries {
    std::vector<double> times;                // uniform, atomic units
    std::vector<std::complex<double>> values; // A(t) per time
    double t_start = 0.0;
    double dt = 0.0;
    spectrum::EnergyModel model; // generating parameters
    WeightDistribution weights;
};

/// Uniformly sampled A(t) on [t_start, t_end]; samples are bit-identical to
/// pointwise autocorrelation calls. Requires dt > 0 and dt < T_cl/20 where
/// T_cl is the Kepler period at the weights' center (sampling coarser than
/// that aliases the Kepler beat). t_start == t_end yields a single sample.
AutocorrelationSeries autocorrelation_series(const spectrum::EnergyModel& model,
                                             const WeightDistribution& weights,
                                             double t_start, double t_end, double dt);

/// Truncated expansion of the phase (E_n - E_nu) * t:
///   theta1 = E' (n-nu) t, theta2 = E''/2 (n-nu)^2 t, theta3 = E'''/6 (n-nu)^3 t,
/// residual = exact phase minus their sum.
struct PhaseExpansionTerms {
    double theta1;
    double theta2;
    double theta3;
    double residual;
};

PhaseExpansionTerms phase_expansion_terms(const spectrum::EnergyModel& model,
                                          const spectrum::ExpansionPoint& point,
                                          int n, double t);

} // namespace rydberg::packet
