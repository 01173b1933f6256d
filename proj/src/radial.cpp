#include "rydberg/radial.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rydberg/constants.hpp"
#include "rydberg/phase.hpp"

namespace rydberg::radial {

namespace {

constexpr int kMaxN = 100;

/// log Gamma(k) for integer k up to 2*kMaxN + 2, cached once.
double log_gamma_int(int k) {
    static const auto table = [] {
        std::array<double, 2 * kMaxN + 3> t{};
        for (int i = 1; i < static_cast<int>(t.size()); ++i) {
            t[static_cast<std::size_t>(i)] = std::lgamma(static_cast<double>(i));
        }
        return t;
    }();
    return table.at(static_cast<std::size_t>(k));
}

void validate_state(const RadialState& state) {
    if (state.n < 1) {
        throw std::invalid_argument("radial: n must be >= 1");
    }
    if (state.n > kMaxN) {
        throw std::invalid_argument("radial: n > 100 unsupported");
    }
    if (state.l < 0 || state.l > state.n - 1) {
        throw std::invalid_argument("radial: l must satisfy 0 <= l <= n-1");
    }
}

struct ScaledValue {
    double value;     // mantissa-like factor, may be zero
    double log_scale; // accumulated log rescaling
};

/// Generalized Laguerre L_k^(alpha)(x) by upward recurrence in the degree,
/// rescaled whenever the magnitude leaves [1e-250, 1e250] so the recurrence
/// never overflows; the true value is value * exp(log_scale).
ScaledValue laguerre_scaled(int k, int alpha, double x) {
    double prev = 1.0; // L_0
    if (k == 0) {
        return {prev, 0.0};
    }
    double curr = 1.0 + alpha - x; // L_1
    double log_scale = 0.0;
    for (int j = 1; j < k; ++j) {
        const double next =
            ((2.0 * j + 1.0 + alpha - x) * curr - (j + alpha) * prev) / (j + 1.0);
        prev = curr;
        curr = next;
        const double mag = std::max(std::fabs(curr), std::fabs(prev));
        if (mag > 1e250) {
            curr *= 1e-250;
            prev *= 1e-250;
            log_scale += 250.0 * std::numbers::ln10;
        } else if (mag != 0.0 && mag < 1e-250) {
            curr *= 1e250;
            prev *= 1e250;
            log_scale -= 250.0 * std::numbers::ln10;
        }
    }
    return {curr, log_scale};
}

/// log of the R_nl normalization: (2/n)^(3/2) sqrt((n-l-1)! / (2n (n+l)!)).
double log_norm(int n, int l) {
    return 1.5 * std::log(2.0 / n) +
           0.5 * (log_gamma_int(n - l) - std::log(2.0 * n) - log_gamma_int(n + l + 1));
}

int min_support_n(const packet::WeightDistribution& weights) {
    return weights.entries.front().n;
}

} // namespace

RadialGrid RadialGrid::sqrt_spaced(double r_min, double r_max, double points_per_wavelength) {
    if (!(r_min > 0.0) || !(r_max > r_min)) {
        throw std::invalid_argument("radial: grid requires 0 < r_min < r_max");
    }
    if (!(points_per_wavelength > 0.0)) {
        throw std::invalid_argument("radial: points_per_wavelength must be positive");
    }
    const double s0 = std::sqrt(r_min);
    const double s1 = std::sqrt(r_max);
    // WKB phase of a near-threshold state grows like sqrt(8 r): a grid
    // uniform in s = sqrt(r) with ds = 2*pi / (ppw * sqrt(8)) keeps ppw
    // points per local wavelength everywhere
    const double ds = constants::two_pi / (points_per_wavelength * std::sqrt(8.0));
    const auto count = static_cast<std::size_t>(std::ceil((s1 - s0) / ds)) + 1;

    RadialGrid grid;
    grid.r.resize(count);
    grid.w.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double s =
            s0 + (s1 - s0) * static_cast<double>(i) / static_cast<double>(count - 1);
        grid.r[i] = s * s;
    }
    grid.w.front() = 0.5 * (grid.r[1] - grid.r[0]);
    grid.w.back() = 0.5 * (grid.r[count - 1] - grid.r[count - 2]);
    for (std::size_t i = 1; i + 1 < count; ++i) {
        grid.w[i] = 0.5 * (grid.r[i + 1] - grid.r[i - 1]);
    }
    return grid;
}

RadialGrid RadialGrid::default_for(double nbar, double points_per_wavelength) {
    return sqrt_spaced(1e-3, 4.0 * nbar * nbar, points_per_wavelength);
}

double RadialGrid::integrate(const std::vector<double>& f) const {
    if (f.size() != r.size()) {
        throw std::invalid_argument("radial: sample count does not match the grid");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        sum += w[i] * f[i];
    }
    return sum;
}

double radial_eval(const RadialState& state, double r) {
    validate_state(state);
    if (r < 0.0) {
        throw std::domain_error("radial: r must be nonnegative");
    }
    const int n = state.n;
    const int l = state.l;
    const double rho = 2.0 * r / n;

    if (rho == 0.0) {
        if (l > 0) {
            return 0.0; // rho^l prefactor
        }
        // L_{n-1}^{(1)}(0) = n
        return std::exp(log_norm(n, 0) + std::log(static_cast<double>(n)));
    }

    const ScaledValue lag = laguerre_scaled(n - l - 1, 2 * l + 1, rho);
    if (lag.value == 0.0) {
        return 0.0;
    }
    const double log_mag = log_norm(n, l) + l * std::log(rho) - 0.5 * rho +
                           std::log(std::fabs(lag.value)) + lag.log_scale;
    return std::copysign(std::exp(log_mag), lag.value);
}

PacketDensity::PacketDensity(const spectrum::EnergyModel& model,
                             const packet::WeightDistribution& weights, int l,
                             RadialGrid grid)
    : grid_(std::move(grid)) {
    if (weights.entries.empty()) {
        throw std::invalid_argument("radial: empty weight distribution");
    }
    if (l < 0 || l > min_support_n(weights) - 1) {
        throw std::invalid_argument("radial: l = " + std::to_string(l) +
                                    " incompatible with support (min n = " +
                                    std::to_string(min_support_n(weights)) + ")");
    }
    energies_.reserve(weights.entries.size());
    amplitudes_.reserve(weights.entries.size());
    basis_.reserve(weights.entries.size());
    for (const auto& [n, w] : weights.entries) {
        energies_.push_back(spectrum::energy(model, n));
        amplitudes_.push_back(std::sqrt(w));
        std::vector<double> row(grid_.r.size());
        const RadialState state{n, l};
        for (std::size_t i = 0; i < grid_.r.size(); ++i) {
            row[i] = radial_eval(state, grid_.r[i]);
        }
        basis_.push_back(std::move(row));
    }
}

std::vector<double> PacketDensity::density(double t) const {
    const std::size_t npts = grid_.r.size();
    std::vector<double> re(npts, 0.0);
    std::vector<double> im(npts, 0.0);
    for (std::size_t s = 0; s < basis_.size(); ++s) {
        const double phi = phase::reduce_product_mod_2pi(energies_[s], t);
        const double cr = amplitudes_[s] * std::cos(phi);
        const double ci = -amplitudes_[s] * std::sin(phi);
        const auto& row = basis_[s];
        for (std::size_t i = 0; i < npts; ++i) {
            re[i] += cr * row[i];
            im[i] += ci * row[i];
        }
    }
    std::vector<double> rho(npts);
    for (std::size_t i = 0; i < npts; ++i) {
        rho[i] = (re[i] * re[i] + im[i] * im[i]) * grid_.r[i] * grid_.r[i];
    }
    return rho;
}

double PacketDensity::expectation_r(double t) const {
    const std::vector<double> rho = density(t);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) {
        num += grid_.w[i] * grid_.r[i] * rho[i];
        den += grid_.w[i] * rho[i];
    }
    return num / den;
}

double PacketDensity::total_probability(double t) const { return grid_.integrate(density(t)); }

std::vector<double> density(const spectrum::EnergyModel& model,
                            const packet::WeightDistribution& weights, int l,
                            const RadialGrid& grid, double t) {
    return PacketDensity(model, weights, l, grid).density(t);
}

double expectation_r(const spectrum::EnergyModel& model,
                     const packet::WeightDistribution& weights, int l,
                     const RadialGrid& grid, double t) {
    return PacketDensity(model, weights, l, grid).expectation_r(t);
}

double density_overlap(const RadialGrid& grid, const std::vector<double>& rho_a,
                       const std::vector<double>& rho_b) {
    if (rho_a.size() != grid.r.size() || rho_b.size() != grid.r.size()) {
        throw std::invalid_argument("radial: density size does not match the grid");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < rho_a.size(); ++i) {
        acc += grid.w[i] * std::sqrt(rho_a[i] * rho_b[i]);
    }
    return acc * acc;
}

} // namespace rydberg::radial
