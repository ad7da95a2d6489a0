#pragma once

// Shared deterministic generators for the property tests.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "stringdamp/even_field.hpp"
#include "stringdamp/support_geometry.hpp"

namespace testutil {

inline double unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * unit(rng);
}

inline stringdamp::CircleGrid random_grid(std::mt19937_64& rng, std::size_t m,
                                          double amplitude) {
    std::vector<double> v(m);
    for (auto& x : v) x = uniform(rng, -amplitude, amplitude);
    return stringdamp::CircleGrid(m, std::move(v));
}

// Grid of dyadic rationals (multiples of 2^-20); parity averages are exact.
inline stringdamp::CircleGrid random_dyadic_grid(std::mt19937_64& rng, std::size_t m,
                                                 double amplitude) {
    std::vector<double> v(m);
    for (auto& x : v) {
        const double raw = uniform(rng, -amplitude, amplitude);
        x = std::ldexp(std::round(std::ldexp(raw, 20)), -20);
    }
    return stringdamp::CircleGrid(m, std::move(v));
}

// Smooth band-limited grid: samples of a random cosine/sine mix.
inline stringdamp::CircleGrid random_smooth_grid(std::mt19937_64& rng, std::size_t m,
                                                 std::size_t band, double amplitude) {
    std::vector<double> a(band + 1), b(band + 1);
    for (auto& x : a) x = uniform(rng, -1.0, 1.0);
    for (auto& x : b) x = uniform(rng, -1.0, 1.0);
    std::vector<double> v(m);
    stringdamp::CircleGrid g(m, std::move(v));
    for (std::size_t j = 0; j < m; ++j) {
        const double x = g.point(j);
        double s = 0.0;
        for (std::size_t n = 0; n <= band; ++n) {
            s += a[n] * std::cos(static_cast<double>(n) * x) +
                 b[n] * std::sin(static_cast<double>(n) * x);
        }
        g[j] = amplitude * s;
    }
    return g;
}

inline stringdamp::Momentum random_momentum(std::mt19937_64& rng, std::size_t band,
                                            bool periodic) {
    std::vector<double> phi(band + 1), psi(band + 1);
    for (auto& x : phi) x = uniform(rng, -1.0, 1.0);
    for (auto& x : psi) x = uniform(rng, -1.0, 1.0);
    if (periodic) phi[0] = 0.0;
    stringdamp::Momentum xi;
    xi.xi0 = stringdamp::EvenFourier(std::move(phi));
    xi.xi1 = stringdamp::EvenFourier(std::move(psi));
    return xi;
}

inline stringdamp::Momentum scale_momentum(const stringdamp::Momentum& xi, double s) {
    stringdamp::Momentum out = xi;
    for (auto& c : out.xi0.coeffs) c *= s;
    for (auto& c : out.xi1.coeffs) c *= s;
    return out;
}

inline stringdamp::Momentum add_momenta(const stringdamp::Momentum& a,
                                        const stringdamp::Momentum& b) {
    stringdamp::Momentum out;
    auto add = [](const std::vector<double>& x, const std::vector<double>& y) {
        std::vector<double> z(std::max(x.size(), y.size()), 0.0);
        for (std::size_t i = 0; i < x.size(); ++i) z[i] += x[i];
        for (std::size_t i = 0; i < y.size(); ++i) z[i] += y[i];
        return z;
    };
    out.xi0 = stringdamp::EvenFourier(add(a.xi0.coeffs, b.xi0.coeffs));
    out.xi1 = stringdamp::EvenFourier(add(a.xi1.coeffs, b.xi1.coeffs));
    return out;
}

}  // namespace testutil
