#pragma once

namespace rydberg::spectrum {

enum class EnergyLaw { hydrogenic, quantum_defect };

/// Energy law E(nu) = -1/(2 (nu - delta)^2) in hartree, with delta the
/// (single-channel) quantum defect. Hydrogenic means delta = 0.
struct EnergyModel {
    EnergyLaw kind = EnergyLaw::hydrogenic;
    double delta = 0.0; // dimensionless, in [0, 1)

    static EnergyModel hydrogenic();
    static EnergyModel with_defect(double delta);
};

/// Expansion center nu for the spectrum Taylor expansion: an integer nbar
/// for resonant excitation or a noninteger N* for detuned excitation.
/// Valid against a model when nu - delta >= 2.
struct ExpansionPoint {
    double nu = 0.0;
};

struct EnergyDerivatives {
    double first;  // dE/dnu at the expansion point
    double second; // d2E/dnu2
    double third;  // d3E/dnu3
};

/// The three characteristic times in atomic units:
///   t_cl  = 2*pi / |E'|        (Kepler period)
///   t_rev = 2*pi / |E''/2|     (revival time)
///   t_sr  = 2*pi / |E'''/6|    (superrevival time)
struct TimeScales {
    double t_cl;
    double t_rev;
    double t_sr;

    friend bool operator==(const TimeScales&, const TimeScales&) = default;
};

/// E(nu) = -1/(2 (nu - delta)^2); exact for integer and noninteger nu.
/// Throws std::domain_error when nu - delta <= 0.
double energy(const EnergyModel& model, double nu);

/// Analytic derivatives of the energy law at the expansion point:
/// E' = x^-3, E'' = -3 x^-4, E''' = 12 x^-5 with x = nu - delta.
/// Throws std::domain_error when the point is invalid (nu - delta < 2).
EnergyDerivatives energy_derivatives(const EnergyModel& model, const ExpansionPoint& point);

/// Characteristic times at the expansion point. Absolute values of the
/// derivatives are used so 0 < t_cl < t_rev < t_sr holds regardless of
/// sign conventions.
TimeScales time_scales(const EnergyModel& model, const ExpansionPoint& point);

/// Convert a time in atomic units to seconds.
double to_si_seconds(double t_au);

} // namespace rydberg::spectrum
