#pragma once

// Representations of even states on the circle [0, 2pi) and the reduction
// to the traveling-wave variable g = f0' + f1.
//
// A state is a pair (f0, f1) of even functions (displacement, velocity).
// Since f0' is odd and f1 is even, knowing g is equivalent to knowing both
// components; f0 is recovered up to an additive constant, which we fix by
// f0(0) = 0.  The rho functional measures the distance-to-rest in the
// normalization where the optimal decay rate equals 1.

#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

namespace stringdamp {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi_v<double>;

// Finite cosine series x -> sum_{n=0..N} c_n cos(n x); even by construction.
struct EvenFourier {
    std::vector<double> coeffs;  // c_0 .. c_N

    EvenFourier() = default;
    explicit EvenFourier(std::vector<double> c);

    std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    double eval(double x) const;
};

// State in coefficient form.
struct StatePair {
    EvenFourier f0;  // displacement
    EvenFourier f1;  // velocity
};

// Samples of a function on the uniform grid x_j = 2pi j / m.  m must be even
// so that reflection x -> -x maps grid points to grid points (-x_j = x_{m-j}).
struct CircleGrid {
    std::size_t m = 0;
    std::vector<double> values;

    CircleGrid() = default;
    CircleGrid(std::size_t grid_size, std::vector<double> v);

    static CircleGrid zeros(std::size_t grid_size);
    static CircleGrid constant(std::size_t grid_size, double c);

    double spacing() const { return kTwoPi / static_cast<double>(m); }
    double point(std::size_t j) const { return static_cast<double>(j) * spacing(); }

    double operator[](std::size_t j) const { return values[j]; }
    double& operator[](std::size_t j) { return values[j]; }
};

// State sampled on a grid (used where the components are not band-limited).
struct GridState {
    CircleGrid f0;
    CircleGrid f1;
};

enum class Problem {
    stop_moving,  // target: all velocity constants, rho = 2pi sup|g|
    damping       // target: all constants, rho = 2pi inf_c sup|g + c|
};

// Samples g = f0' + f1 of a coefficient state.  Exact up to round-off (the
// series is finite).  Requires m >= 2*degree + 2 so the grid resolves the
// highest mode.
CircleGrid to_traveling_wave(const StatePair& f, std::size_t m);

// Grid counterpart: g = D f0 + f1 with D the central difference.  Second
// order; at x = 0 the odd derivative vanishes exactly on symmetric grids.
CircleGrid traveling_wave_grid(const GridState& f);

// Even/odd parts via reflection: even = (g(x) + g(-x))/2, odd = g - even,
// so that even + odd reproduces g.
std::pair<CircleGrid, CircleGrid> split_even_odd(const CircleGrid& g);

// f1 = even part of g; f0 = cumulative trapezoid integral of the odd part,
// normalized so f0(0) = 0.
GridState reconstruct_state(const CircleGrid& g);

// Raw diagnostics (no 2pi factor).
double sup_abs(const CircleGrid& g);
double half_oscillation(const CircleGrid& g);

// Distance-to-rest functional, 2pi-normalized so the optimal decay rate is 1.
// stop_moving: 2pi * max_j |g_j|; damping: 2pi * (max_j g_j - min_j g_j) / 2
// (the optimal constant shift is -(max+min)/2).
double rho(const CircleGrid& g, Problem problem);

// Cosine coefficients c_0..c_{n_max} of an even grid function: the grid
// least-squares projection; exact for band-limited inputs when
// n_max <= m/2 - 1.
EvenFourier cosine_analysis(const CircleGrid& g, std::size_t n_max);

}  // namespace stringdamp
