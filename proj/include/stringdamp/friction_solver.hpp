#pragma once

// Exact closed-loop solver for the transport equation with dry-friction
// point feedback,
//
//   (d/dt - d/dx) g(x, t) = -delta(x) v(t),   v(t) in sign g(0, t),
//
// where sign is multivalued, sign(0) = [-1, 1].  Along the characteristic
// through (z, t) the profile is the initial value at z + t minus the kicks
// collected at the load point, so the trace phi(t) = g(0, t) satisfies the
// scalar inclusion
//
//   phi(t) + v(t)/2 + sum of earlier-period v = G(t),   v in sign phi,
//
// with G the (2pi-periodic) initial profile.  The kick at the current
// instant counts with weight 1/2 (the trace is the midpoint of the jump);
// once it is in the past it counts fully.  For each grid point the solution
// over successive periods is pure algebra:
//
//   (phi_k, v_k) = solve_scalar_inclusion(G_k),   G_{k+1} = G_k - v_k,
//
// which is exact in floating point for the branch values involved.  The
// recursions for different grid points are independent; solve_phi runs them
// data-parallel with a serial reference kept for testing.

#include <cstddef>
#include <vector>

#include "stringdamp/even_field.hpp"

namespace stringdamp {

namespace detail {

double mod_two_pi(double x);

// Geometry of the load-point crossings of the characteristic through (z, t):
// crossing times are s_p = t - dz - 2 pi p in [0, t] with dz = z mod 2pi.
// Shared between the closed- and open-loop evaluators so both apply the same
// endpoint conventions.
struct CrossingGeometry {
    std::size_t j0 = 0;    // grid index of the characteristic label (z+t mod 2pi)
    bool at_load = false;  // z on the load point
    long n_cross = 0;      // crossings in [0, t]
    double s0 = 0.0;       // latest crossing time
    long q_hi = 0;         // period index of the latest crossing
};
CrossingGeometry crossing_geometry(std::size_t m, double z, double t);

}  // namespace detail

// One algebraic step: phi + v/2 = rhs with v in sign(phi).
//   rhs >  1/2 : phi = rhs - 1/2, v = +1
//   rhs < -1/2 : phi = rhs + 1/2, v = -1
//   otherwise  : phi = 0,         v = 2 rhs   (sliding selection)
// |rhs| = 1/2 falls in the sliding branch; both branches coincide there.
struct InclusionStep {
    double phi;
    double v;
};
InclusionStep solve_scalar_inclusion(double rhs);

// k+1 iterations of the per-characteristic recursion starting from g0.
// step[j] holds (phi_j, v_j) together with the right-hand side rhs_j that
// produced them; rhs_{j+1} = rhs_j - v_j.
struct CharacteristicStep {
    double phi;
    double v;
    double rhs;
};
std::vector<CharacteristicStep> evolve_characteristic(double g0, std::size_t k);

// Load-point trace and realized sign selection over [0, horizon], sampled on
// the uniform time grid t_i = i * 2pi/m (index i = p*m + j corresponds to
// period p and spatial grid point j; the characteristic through grid point j
// crosses the load point at times x_j + 2 pi p).
struct SlidingSignal {
    std::size_t m = 0;        // spatial grid size; time step is 2pi/m
    std::size_t periods = 0;  // computed periods (covers horizon plus one)
    double horizon = 0.0;
    std::vector<double> phi;    // phi(t_i)
    std::vector<double> v;      // selection v(t_i), |v| <= 1
    std::vector<double> rhs;    // right-hand side entering each step
    std::vector<double> cum_v;  // (periods+1) x m prefix sums of v over periods

    std::size_t size() const { return phi.size(); }
    double time_step() const { return kTwoPi / static_cast<double>(m); }
    double time_at(std::size_t i) const { return static_cast<double>(i) * time_step(); }

    // Nearest-sample lookups (G is merely bounded measurable; interpolation
    // inside the solution would be unjustified).
    double phi_at(double t) const;
    double v_at(double t) const;

    std::size_t nearest_index(double t) const;
};

SlidingSignal solve_phi(const CircleGrid& G, double T);
SlidingSignal solve_phi_serial(const CircleGrid& G, double T);

// Value convention at the load point when a kick fires exactly at the
// sampling instant: `trace` takes the jump midpoint (so the profile at z = 0
// reproduces phi); `pre_kick` excludes the instantaneous kick, which is the
// correct initial datum when the evolution is restarted at that instant.
enum class LoadPointRule { trace, pre_kick };

// Profile value g(z, t): the initial value transported from z + t minus the
// kicks at the crossing times s = z + t - 2 pi k in [0, t].  A crossing at
// s = t (possible only for z = 0 mod 2pi) carries weight 1/2 under `trace`;
// a crossing at s = 0 carries weight 1 for t > 0.  z snaps to the nearest
// grid characteristic.  Throws std::out_of_range for t beyond the horizon.
double field_at(const CircleGrid& G, const SlidingSignal& sig, double z, double t,
                LoadPointRule rule = LoadPointRule::trace);

// Whole profile g(., t) on the grid.
CircleGrid profile_at(const CircleGrid& G, const SlidingSignal& sig, double t,
                      LoadPointRule rule = LoadPointRule::trace);

// Time series of rho (both problem variants), realized control and trace.
struct TrajectoryRecord {
    Problem problem = Problem::stop_moving;
    std::vector<double> times;
    std::vector<double> rho_stop;
    std::vector<double> rho_damp;
    std::vector<double> u;     // realized control
    std::vector<double> phi0;  // load-point trace g(0, t)

    const std::vector<double>& primary_rho() const {
        return problem == Problem::stop_moving ? rho_stop : rho_damp;
    }
};

// Period boundaries plus `intra` equally spaced samples inside each period,
// clipped to [0, T], with T itself always included.
std::vector<double> trajectory_sample_times(double T, std::size_t intra = 8);

TrajectoryRecord trajectory_rho(const CircleGrid& G, double T, Problem problem,
                                std::size_t intra = 8);
TrajectoryRecord trajectory_rho_serial(const CircleGrid& G, double T, Problem problem,
                                       std::size_t intra = 8);

}  // namespace stringdamp
