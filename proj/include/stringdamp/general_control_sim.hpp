#pragma once

// Open-loop simulator for arbitrary admissible controls |u| <= 1 via
// characteristics, plus the adversarial rate sweep used to check that no
// admissible control beats the dry-friction decay rate.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "stringdamp/even_field.hpp"
#include "stringdamp/friction_solver.hpp"

namespace stringdamp {

// Piecewise-constant admissible control on [0, duration]: value_at(t) is
// values[i] on [breakpoints[i], breakpoints[i+1]).  Lookups snap times that
// are within 1e-9 below a breakpoint onto it, so crossing times computed in
// floating point land on the intended piece.
struct PiecewiseControl {
    std::vector<double> breakpoints;  // strictly increasing, starts at 0
    std::vector<double> values;       // |v| <= 1
    double duration = 0.0;

    PiecewiseControl() = default;
    PiecewiseControl(std::vector<double> bp, std::vector<double> vals, double dur);

    static PiecewiseControl constant(double value, double dur);

    double value_at(double t) const;
};

// -v(t) from a closed-loop solution, as an open-loop control sampled on the
// solver's own time grid.
PiecewiseControl export_dry_friction(const SlidingSignal& sig);

// g(z, t) = G(z + t) + sum of u at the crossing times s = z + t - 2 pi k in
// [0, t]; endpoint weights exactly as in field_at (1/2 at s = t when z = 0,
// full weight at s = 0).
double open_loop_field_at(const CircleGrid& G, const PiecewiseControl& u, double z,
                          double t, LoadPointRule rule = LoadPointRule::trace);

CircleGrid open_loop_profile(const CircleGrid& G, const PiecewiseControl& u, double t,
                             LoadPointRule rule = LoadPointRule::trace);

double open_loop_rho(const CircleGrid& G, const PiecewiseControl& u, double t,
                     Problem problem);

// Full trajectory record at the standard sample times.  Requires the control
// to cover [0, T].
TrajectoryRecord simulate_open_loop(const CircleGrid& G, const PiecewiseControl& u,
                                    double T, Problem problem);
TrajectoryRecord simulate_open_loop_serial(const CircleGrid& G, const PiecewiseControl& u,
                                           double T, Problem problem);

// Control generators for the adversarial sweep.
PiecewiseControl random_bang_bang(std::uint64_t seed, double duration, double mean_gap);
// Chases the currently largest |g| characteristic: at each period start (and
// after the chased characteristic crosses) re-targets the argmax and applies
// u = -sign of its value.
PiecewiseControl sup_chasing_control(const CircleGrid& G, double duration);

struct NamedControl {
    std::string kind;
    PiecewiseControl control;
};

std::vector<NamedControl> adversarial_suite(const CircleGrid& G, double T,
                                            std::size_t count, std::uint64_t seed);

struct BoundCheckRow {
    std::string kind;
    double rate = 0.0;
    double rho0 = 0.0;
    double rhoT = 0.0;
    double M = 0.0;  // min(rho0, rhoT)
    bool within_tol = false;
};

struct BoundCheckReport {
    std::vector<BoundCheckRow> rows;
    double max_rate = 0.0;
    double rho0 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    std::size_t violations = 0;

    double tol(double T, double M) const { return c1 / T + c2 / M; }
};

// Staircase deviation of the optimal rate: rho moves by at most one period's
// worth (2pi) relative to T at each end, so |rate - 1| <= 4pi/T for the
// dry-friction law; the default constants double that envelope.
inline constexpr double kRateTolPerTime = 8.0 * std::numbers::pi_v<double>;
inline constexpr double kRateTolPerRho = 8.0 * std::numbers::pi_v<double>;

// Rate (rho(0) - rho(T)) / T for every control, checked against
// 1 + c1/T + c2/M.  Controls are simulated independently and in parallel.
BoundCheckReport bound_check(const CircleGrid& G, const std::vector<NamedControl>& controls,
                             double T, Problem problem = Problem::stop_moving,
                             double c1 = kRateTolPerTime, double c2 = kRateTolPerRho);

}  // namespace stringdamp
