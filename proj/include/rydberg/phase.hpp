#pragma once

#include <cmath>

#include "rydberg/constants.hpp"

namespace rydberg::phase {

/// Reduce the product a*b modulo 2*pi into (-pi, pi].
///
/// At superrevival times the raw phase E_n*t reaches ~1e6 rad; a plain
/// double product followed by fmod loses ~1e-11 rad. Here the product
/// rounding error is recovered with an fma and the modulus uses a two-word
/// representation of 2*pi, keeping the reduced phase accurate to a few ulp
/// for |a*b| up to ~1e8 rad. All per-term phases in the project go through
/// this one function.
inline double reduce_product_mod_2pi(double a, double b) {
    using constants::two_pi;
    using constants::two_pi_tail;

    const double p = a * b;
    const double p_err = std::fma(a, b, -p); // exact product residual
    const double q = std::nearbyint(p * (1.0 / two_pi));
    double r = std::fma(-q, two_pi, p);      // p - q*2pi with a single rounding
    r -= q * two_pi_tail;                    // account for double(2pi) != 2pi
    r += p_err;
    if (r > constants::pi) {
        r -= two_pi;
    } else if (r < -constants::pi) {
        r += two_pi;
    }
    return r;
}

} // namespace rydberg::phase
