#include "stringdamp/even_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace stringdamp {

namespace {

void require_finite(const std::vector<double>& v, const char* what) {
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument(std::string(what) + ": non-finite entry");
        }
    }
}

}  // namespace

EvenFourier::EvenFourier(std::vector<double> c) : coeffs(std::move(c)) {
    require_finite(coeffs, "EvenFourier");
}

double EvenFourier::eval(double x) const {
    double s = 0.0;
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
        s += coeffs[n] * std::cos(static_cast<double>(n) * x);
    }
    return s;
}

CircleGrid::CircleGrid(std::size_t grid_size, std::vector<double> v)
    : m(grid_size), values(std::move(v)) {
    if (m < 2 || m % 2 != 0) {
        throw std::invalid_argument("CircleGrid: grid size must be even and >= 2");
    }
    if (values.size() != m) {
        throw std::invalid_argument("CircleGrid: value count does not match grid size");
    }
    require_finite(values, "CircleGrid");
}

CircleGrid CircleGrid::zeros(std::size_t grid_size) {
    return CircleGrid(grid_size, std::vector<double>(grid_size, 0.0));
}

CircleGrid CircleGrid::constant(std::size_t grid_size, double c) {
    return CircleGrid(grid_size, std::vector<double>(grid_size, c));
}

CircleGrid to_traveling_wave(const StatePair& f, std::size_t m) {
    const std::size_t deg = std::max(f.f0.degree(), f.f1.degree());
    if (m < 2 * deg + 2) {
        throw std::invalid_argument(
            "to_traveling_wave: grid too coarse for series degree " + std::to_string(deg) +
            " (need m >= " + std::to_string(2 * deg + 2) + ")");
    }
    CircleGrid g = CircleGrid::zeros(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double x = g.point(j);
        double s = 0.0;
        for (std::size_t n = 0; n < f.f0.coeffs.size(); ++n) {
            s -= static_cast<double>(n) * f.f0.coeffs[n] * std::sin(static_cast<double>(n) * x);
        }
        for (std::size_t n = 0; n < f.f1.coeffs.size(); ++n) {
            s += f.f1.coeffs[n] * std::cos(static_cast<double>(n) * x);
        }
        g[j] = s;
    }
    return g;
}

CircleGrid traveling_wave_grid(const GridState& f) {
    if (f.f0.m != f.f1.m) {
        throw std::invalid_argument("traveling_wave_grid: component grids differ");
    }
    const std::size_t m = f.f0.m;
    const double h = f.f0.spacing();
    CircleGrid g = CircleGrid::zeros(m);
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t jp = (j + 1) % m;
        const std::size_t jm = (j + m - 1) % m;
        g[j] = (f.f0[jp] - f.f0[jm]) / (2.0 * h) + f.f1[j];
    }
    return g;
}

std::pair<CircleGrid, CircleGrid> split_even_odd(const CircleGrid& g) {
    const std::size_t m = g.m;
    CircleGrid even = CircleGrid::zeros(m);
    CircleGrid odd = CircleGrid::zeros(m);
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t r = (m - j) % m;  // reflection -x_j = x_{m-j}
        even[j] = 0.5 * g[j] + 0.5 * g[r];
        odd[j] = g[j] - even[j];  // even + odd reproduces g
    }
    return {even, odd};
}

GridState reconstruct_state(const CircleGrid& g) {
    auto [even, odd] = split_even_odd(g);
    const std::size_t m = g.m;
    const double h = g.spacing();
    CircleGrid f0 = CircleGrid::zeros(m);
    double acc = 0.0;
    for (std::size_t j = 1; j < m; ++j) {
        acc += 0.5 * h * (odd[j - 1] + odd[j]);
        f0[j] = acc;
    }
    return GridState{f0, even};
}

double sup_abs(const CircleGrid& g) {
    double s = 0.0;
    for (double x : g.values) s = std::max(s, std::abs(x));
    return s;
}

double half_oscillation(const CircleGrid& g) {
    const auto [lo, hi] = std::minmax_element(g.values.begin(), g.values.end());
    return 0.5 * (*hi - *lo);
}

double rho(const CircleGrid& g, Problem problem) {
    const double raw = problem == Problem::stop_moving ? sup_abs(g) : half_oscillation(g);
    return kTwoPi * raw;
}

EvenFourier cosine_analysis(const CircleGrid& g, std::size_t n_max) {
    if (n_max > g.m / 2 - 1) {
        throw std::invalid_argument("cosine_analysis: order exceeds grid resolution");
    }
    std::vector<double> c(n_max + 1, 0.0);
    const std::size_t m = g.m;
    for (std::size_t n = 0; n <= n_max; ++n) {
        double s = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            s += g[j] * std::cos(static_cast<double>(n) * g.point(j));
        }
        c[n] = (n == 0 ? 1.0 : 2.0) * s / static_cast<double>(m);
    }
    return EvenFourier(std::move(c));
}

}  // namespace stringdamp
