#pragma once

#include <vector>

#include "rydberg/packet.hpp"
#include "rydberg/spectrum.hpp"

namespace rydberg::radial {

struct RadialState {
    int n; // principal quantum number, 1 <= n <= 100 supported
    int l; // orbital quantum number, 0 <= l <= n-1
};

/// Radial quadrature grid: strictly increasing positive r (Bohr radii) with
/// trapezoid weights. The default grid is uniform in sqrt(r), which gives a
/// constant number of points per local de Broglie wavelength for near-zero
/// energy states (the WKB phase grows like sqrt(8 r)).
struct RadialGrid {
    std::vector<double> r;
    std::vector<double> w;

    /// Grid uniform in sqrt(r) on [r_min, r_max] with at least
    /// points_per_wavelength points per local oscillation.
    static RadialGrid sqrt_spaced(double r_min, double r_max,
                                  double points_per_wavelength);

    /// Default packet grid: r in [1e-3, 4 nbar^2], 40 points per wavelength.
    static RadialGrid default_for(double nbar, double points_per_wavelength = 40.0);

    /// Quadrature of f sampled on the grid.
    double integrate(const std::vector<double>& f) const;
};

/// Hydrogenic R_nl(r) in atomic units, normalized so that
/// int_0^inf R_nl^2 r^2 dr = 1. The normalization factor is assembled in
/// log space and the Laguerre polynomial by upward recurrence with scaling,
/// so values stay finite for all n <= 100 (larger n is rejected).
double radial_eval(const RadialState& state, double r);

/// Caches the radial basis of a packet over a grid for repeated evaluation
/// at many times. density(t) and expectation_r(t) match the corresponding
/// free functions bit for bit.
class PacketDensity {
  public:
    PacketDensity(const spectrum::EnergyModel& model,
                  const packet::WeightDistribution& weights, int l, RadialGrid grid);

    /// |Psi(r, t)|^2 r^2 per grid point (angular factor dropped).
    std::vector<double> density(double t) const;

    /// <r>(t) = int r rho dr / int rho dr over the grid.
    double expectation_r(double t) const;

    /// int rho dr over the grid (1 up to quadrature/truncation tolerance).
    double total_probability(double t) const;

    const RadialGrid& grid() const { return grid_; }

  private:
    RadialGrid grid_;
    std::vector<double> energies_;
    std::vector<double> amplitudes_;  // sqrt(w_n), phases real positive
    std::vector<std::vector<double>> basis_; // R_nl per state over the grid
};

/// Radial probability density of the packet at time t.
/// Throws std::invalid_argument when l is incompatible with the support
/// (l must be <= min(n) - 1).
std::vector<double> density(const spectrum::EnergyModel& model,
                            const packet::WeightDistribution& weights, int l,
                            const RadialGrid& grid, double t);

/// <r>(t) in Bohr radii.
double expectation_r(const spectrum::EnergyModel& model,
                     const packet::WeightDistribution& weights, int l,
                     const RadialGrid& grid, double t);

/// Bhattacharyya-style overlap [int sqrt(rho_a rho_b) dr]^2 between two
/// density snapshots on a shared grid; a shape-resemblance metric
/// complementary to |A|.
double density_overlap(const RadialGrid& grid, const std::vector<double>& rho_a,
                       const std::vector<double>& rho_b);

} // namespace rydberg::radial
