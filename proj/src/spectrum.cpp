#include "rydberg/spectrum.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "rydberg/constants.hpp"

namespace rydberg::spectrum {

namespace {

double effective_nu(const EnergyModel& model, double nu) {
    const double x = nu - model.delta;
    if (!(x > 0.0)) {
        throw std::domain_error("spectrum: nu - delta must be positive, got " +
                                std::to_string(x));
    }
    return x;
}

double expansion_x(const EnergyModel& model, const ExpansionPoint& point) {
    const double x = point.nu - model.delta;
    if (!(x >= 2.0)) {
        throw std::domain_error("spectrum: expansion point requires nu - delta >= 2, got " +
                                std::to_string(x));
    }
    return x;
}

} // namespace

EnergyModel EnergyModel::hydrogenic() { return {EnergyLaw::hydrogenic, 0.0}; }

EnergyModel EnergyModel::with_defect(double delta) {
    if (!(delta >= 0.0 && delta < 1.0)) {
        throw std::invalid_argument("spectrum: quantum defect must lie in [0, 1), got " +
                                    std::to_string(delta) +
                                    " (absorb larger defects into the integer part of n)");
    }
    return {EnergyLaw::quantum_defect, delta};
}

double energy(const EnergyModel& model, double nu) {
    const double x = effective_nu(model, nu);
    return -0.5 / (x * x);
}

EnergyDerivatives energy_derivatives(const EnergyModel& model, const ExpansionPoint& point) {
    const double x = expansion_x(model, point);
    const double x2 = x * x;
    const double x3 = x2 * x;
    return {1.0 / x3, -3.0 / (x2 * x2), 12.0 / (x2 * x3)};
}

TimeScales time_scales(const EnergyModel& model, const ExpansionPoint& point) {
    const EnergyDerivatives d = energy_derivatives(model, point);
    return {constants::two_pi / std::fabs(d.first),
            constants::two_pi / std::fabs(0.5 * d.second),
            constants::two_pi / std::fabs(d.third / 6.0)};
}

double to_si_seconds(double t_au) { return t_au * constants::atomic_unit_of_time_s; }

} // namespace rydberg::spectrum
