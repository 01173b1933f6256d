#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rydberg/packet.hpp"
#include "rydberg/radial.hpp"
#include "rydberg/spectrum.hpp"

using namespace rydberg;
using packet::WeightDistribution;
using radial::RadialGrid;
using radial::RadialState;
using spectrum::EnergyModel;

namespace {

const EnergyModel kHydrogen = EnergyModel::hydrogenic();

WeightDistribution single_line(int n) {
    return WeightDistribution::from_entries({{n, 1.0}}, static_cast<double>(n), 0.5,
                                            kHydrogen);
}

double norm_integral(const RadialGrid& grid, int n, int l) {
    std::vector<double> f(grid.r.size());
    for (std::size_t i = 0; i < grid.r.size(); ++i) {
        const double R = radial::radial_eval({n, l}, grid.r[i]);
        f[i] = R * R * grid.r[i] * grid.r[i];
    }
    return grid.integrate(f);
}

} // namespace

TEST_CASE("radial_eval: ground state closed form R_10(r) = 2 exp(-r)") {
    CHECK(radial::radial_eval({1, 0}, 1.0) ==
          doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-13));
    CHECK(radial::radial_eval({1, 0}, 0.0) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(radial::radial_eval({1, 0}, 5.5) ==
          doctest::Approx(2.0 * std::exp(-5.5)).epsilon(1e-13));
}

TEST_CASE("radial_eval: centrifugal prefactor vanishes at the origin") {
    CHECK(radial::radial_eval({2, 1}, 0.0) == 0.0);
    CHECK(radial::radial_eval({50, 3}, 0.0) == 0.0);
}

TEST_CASE("radial_eval: argument validation") {
    CHECK_THROWS_AS(radial::radial_eval({1, 0}, -1e-9), std::domain_error);
    CHECK_THROWS_AS(radial::radial_eval({101, 0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(radial::radial_eval({0, 0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(radial::radial_eval({5, 5}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(radial::radial_eval({5, -1}, 1.0), std::invalid_argument);
    CHECK_NOTHROW(radial::radial_eval({100, 99}, 1.0));
}

TEST_CASE("radial_eval: quadrature normalization at n=50, l=1") {
    const RadialGrid grid = RadialGrid::default_for(50.0);
    CHECK(norm_integral(grid, 50, 1) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("radial_eval: orthonormality for shared l up to n=60") {
    const RadialGrid grid = RadialGrid::default_for(60.0);
    const std::vector<int> ns = {2, 10, 25, 40, 50, 55, 60};
    std::vector<std::vector<double>> basis;
    basis.reserve(ns.size());
    for (const int n : ns) {
        std::vector<double> row(grid.r.size());
        for (std::size_t i = 0; i < grid.r.size(); ++i) {
            row[i] = radial::radial_eval({n, 1}, grid.r[i]);
        }
        basis.push_back(std::move(row));
    }
    for (std::size_t a = 0; a < ns.size(); ++a) {
        for (std::size_t b = a; b < ns.size(); ++b) {
            double overlap = 0.0;
            for (std::size_t i = 0; i < grid.r.size(); ++i) {
                overlap += grid.w[i] * basis[a][i] * basis[b][i] * grid.r[i] * grid.r[i];
            }
            const double expected = a == b ? 1.0 : 0.0;
            CAPTURE(ns[a]);
            CAPTURE(ns[b]);
            CHECK(std::fabs(overlap - expected) < 1e-6);
        }
    }
}

TEST_CASE("radial_eval: finite everywhere up to n=100") {
    for (const int n : {1, 45, 100}) {
        for (const int l : {0, std::min(1, n - 1), n - 1}) {
            const RadialGrid grid = RadialGrid::sqrt_spaced(1e-3, 4.0 * n * n, 40.0);
            for (std::size_t i = 0; i < grid.r.size(); i += 7) {
                const double value = radial::radial_eval({n, l}, grid.r[i]);
                CAPTURE(n);
                CAPTURE(l);
                CAPTURE(grid.r[i]);
                CHECK(std::isfinite(value));
            }
            CHECK(std::isfinite(radial::radial_eval({n, l}, 0.0)));
        }
    }
}

TEST_CASE("grid: construction guards") {
    CHECK_THROWS_AS(RadialGrid::sqrt_spaced(0.0, 100.0, 40.0), std::invalid_argument);
    CHECK_THROWS_AS(RadialGrid::sqrt_spaced(1.0, 1.0, 40.0), std::invalid_argument);
    CHECK_THROWS_AS(RadialGrid::sqrt_spaced(1e-3, 100.0, 0.0), std::invalid_argument);
}

TEST_CASE("grid: default packet grid matches the frozen layout") {
    const RadialGrid grid = RadialGrid::default_for(45.0);
    CHECK(grid.r.size() == 1621);
    CHECK(grid.r.front() == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK(grid.r.back() == doctest::Approx(8100.0).epsilon(1e-12));
    for (std::size_t i = 1; i < grid.r.size(); ++i) {
        REQUIRE(grid.r[i] > grid.r[i - 1]);
    }
}

TEST_CASE("grid: trapezoid weights reproduce a smooth decaying integral") {
    const RadialGrid grid = RadialGrid::default_for(10.0);
    std::vector<double> f(grid.r.size());
    for (std::size_t i = 0; i < grid.r.size(); ++i) {
        f[i] = std::exp(-grid.r[i]) * grid.r[i] * grid.r[i];
    }
    // int_0^inf r^2 exp(-r) dr = 2
    CHECK(grid.integrate(f) == doctest::Approx(2.0).epsilon(1e-6));
    CHECK_THROWS_AS(grid.integrate(std::vector<double>(3, 1.0)), std::invalid_argument);
}

TEST_CASE("expectation_r: single lines match the closed form (3n^2 - l(l+1))/2") {
    for (const auto& [n, l] : std::vector<std::pair<int, int>>{{45, 1}, {30, 0}, {45, 44}}) {
        const RadialGrid grid = RadialGrid::default_for(45.0);
        const double got = radial::expectation_r(kHydrogen, single_line(n), l, grid, 0.0);
        const double expected = 0.5 * (3.0 * n * n - l * (l + 1.0));
        CAPTURE(n);
        CAPTURE(l);
        CHECK(got == doctest::Approx(expected).epsilon(1e-4));
    }
}

TEST_CASE("density: a stationary state does not move") {
    const RadialGrid grid = RadialGrid::default_for(45.0);
    const radial::PacketDensity pd(kHydrogen, single_line(45), 1, grid);
    const auto rho0 = pd.density(0.0);
    const auto rho1 = pd.density(7.3e5);
    REQUIRE(rho0.size() == rho1.size());
    for (std::size_t i = 0; i < rho0.size(); i += 5) {
        CHECK(rho1[i] == doctest::Approx(rho0[i]).epsilon(1e-12));
    }
}

TEST_CASE("density: nonnegative and normalized for the reference packet") {
    const auto weights = packet::gaussian_weights(45.0, 2.5);
    const auto ts = spectrum::time_scales(kHydrogen, {45.0});
    const RadialGrid grid = RadialGrid::default_for(45.0);
    const radial::PacketDensity pd(kHydrogen, weights, 1, grid);
    for (const double t : {0.0, ts.t_rev}) {
        const auto rho = pd.density(t);
        for (const double value : rho) {
            REQUIRE(value >= 0.0);
        }
        CHECK(grid.integrate(rho) == doctest::Approx(1.0).epsilon(1e-4));
    }
}

TEST_CASE("density: revival-shape overlap regression") {
    const auto weights = packet::gaussian_weights(45.0, 2.5);
    const auto ts = spectrum::time_scales(kHydrogen, {45.0});
    const RadialGrid grid = RadialGrid::default_for(45.0);
    const radial::PacketDensity pd(kHydrogen, weights, 1, grid);
    const double overlap =
        radial::density_overlap(grid, pd.density(0.0), pd.density(ts.t_rev));
    // exact-sum + quadrature value, frozen; bounded below by |A(t_rev)|^2
    CHECK(overlap == doctest::Approx(0.2922005923520714).epsilon(1e-6));
    const double fidelity =
        std::norm(packet::autocorrelation(kHydrogen, weights, ts.t_rev));
    CHECK(overlap >= fidelity - 1e-9);
}

TEST_CASE("density: incompatible l is rejected") {
    const auto weights = packet::gaussian_weights(45.0, 2.5); // support starts at n=33
    const RadialGrid grid = RadialGrid::default_for(45.0);
    CHECK_THROWS_AS(radial::PacketDensity(kHydrogen, weights, 33, grid),
                    std::invalid_argument);
    CHECK_THROWS_AS(radial::PacketDensity(kHydrogen, weights, -1, grid),
                    std::invalid_argument);
    CHECK_NOTHROW(radial::PacketDensity(kHydrogen, weights, 32, grid));
}
