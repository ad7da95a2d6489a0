#include "stringdamp/general_control_sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace stringdamp {

namespace {

double sgn(double x) { return (x > 0.0) ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// Uniform in [0, 1) from the top 53 bits; platform-independent.
double unit_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

PiecewiseControl::PiecewiseControl(std::vector<double> bp, std::vector<double> vals,
                                   double dur)
    : breakpoints(std::move(bp)), values(std::move(vals)), duration(dur) {
    if (breakpoints.empty() || breakpoints.size() != values.size()) {
        throw std::invalid_argument("control: breakpoint and value counts must match and be nonempty");
    }
    if (breakpoints.front() != 0.0) {
        throw std::invalid_argument("control: breakpoints must start at 0");
    }
    for (std::size_t i = 1; i < breakpoints.size(); ++i) {
        if (!(breakpoints[i] > breakpoints[i - 1])) {
            throw std::invalid_argument("control: breakpoints must be strictly increasing");
        }
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(std::abs(values[i]) <= 1.0)) {
            throw std::invalid_argument("control: |u| exceeds 1 at breakpoint index " +
                                        std::to_string(i));
        }
    }
    if (!(duration >= breakpoints.back())) {
        throw std::invalid_argument("control: duration must reach the last breakpoint");
    }
}

PiecewiseControl PiecewiseControl::constant(double value, double dur) {
    return PiecewiseControl({0.0}, {value}, dur);
}

double PiecewiseControl::value_at(double t) const {
    // Snap: times within 1e-9 below a breakpoint belong to the new piece.
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t + 1e-9);
    if (it == breakpoints.begin()) return values.front();
    return values[static_cast<std::size_t>(it - breakpoints.begin()) - 1];
}

PiecewiseControl export_dry_friction(const SlidingSignal& sig) {
    const std::size_t n = sig.size();
    std::vector<double> bp(n);
    std::vector<double> vals(n);
    for (std::size_t i = 0; i < n; ++i) {
        bp[i] = sig.time_at(i);
        vals[i] = -sig.v[i];
    }
    return PiecewiseControl(std::move(bp), std::move(vals),
                            static_cast<double>(sig.periods) * kTwoPi);
}

namespace {

double open_loop_field_impl(const CircleGrid& G, const PiecewiseControl& u, double z,
                            double t, LoadPointRule rule) {
    const detail::CrossingGeometry geo = detail::crossing_geometry(G.m, z, t);
    double g = G[geo.j0];
    for (long p = 0; p < geo.n_cross; ++p) {
        double s = geo.s0 - kTwoPi * static_cast<double>(p);
        if (s < 0.0) s = 0.0;
        double w = 1.0;
        if (p == 0 && geo.at_load) {
            w = (rule == LoadPointRule::trace) ? 0.5 : 0.0;
        }
        if (w != 0.0) g += w * u.value_at(s);
    }
    return g;
}

void require_covers(const PiecewiseControl& u, double T, const char* who) {
    if (u.duration + 1e-9 < T) {
        throw std::invalid_argument(std::string(who) + ": control shorter than the horizon");
    }
}

TrajectoryRecord simulate_impl(const CircleGrid& G, const PiecewiseControl& u, double T,
                               Problem problem, bool parallel) {
    if (!(T >= 0.0)) {
        throw std::invalid_argument("simulate_open_loop: horizon must be nonnegative");
    }
    require_covers(u, T, "simulate_open_loop");
    TrajectoryRecord rec;
    rec.problem = problem;
    rec.times = trajectory_sample_times(T);
    const std::size_t n = rec.times.size();
    rec.rho_stop.resize(n);
    rec.rho_damp.resize(n);
    rec.u.resize(n);
    rec.phi0.resize(n);
    const std::size_t m = G.m;

#pragma omp parallel for schedule(static) if (parallel)
    for (long i = 0; i < static_cast<long>(n); ++i) {
        const double t = rec.times[static_cast<std::size_t>(i)];
        double vmax = -HUGE_VAL;
        double vmin = HUGE_VAL;
        for (std::size_t j = 0; j < m; ++j) {
            const double val = open_loop_field_impl(G, u, G.point(j), t, LoadPointRule::trace);
            vmax = std::max(vmax, val);
            vmin = std::min(vmin, val);
        }
        rec.rho_stop[static_cast<std::size_t>(i)] =
            kTwoPi * std::max(std::abs(vmax), std::abs(vmin));
        rec.rho_damp[static_cast<std::size_t>(i)] = kTwoPi * 0.5 * (vmax - vmin);
        rec.u[static_cast<std::size_t>(i)] = u.value_at(t);
        rec.phi0[static_cast<std::size_t>(i)] =
            open_loop_field_impl(G, u, 0.0, t, LoadPointRule::trace);
    }
    return rec;
}

}  // namespace

double open_loop_field_at(const CircleGrid& G, const PiecewiseControl& u, double z,
                          double t, LoadPointRule rule) {
    if (!(t >= 0.0)) {
        throw std::invalid_argument("open_loop_field_at: time must be nonnegative");
    }
    require_covers(u, t, "open_loop_field_at");
    return open_loop_field_impl(G, u, z, t, rule);
}

CircleGrid open_loop_profile(const CircleGrid& G, const PiecewiseControl& u, double t,
                             LoadPointRule rule) {
    require_covers(u, t, "open_loop_profile");
    CircleGrid out = CircleGrid::zeros(G.m);
    for (std::size_t j = 0; j < G.m; ++j) {
        out[j] = open_loop_field_impl(G, u, G.point(j), t, rule);
    }
    return out;
}

double open_loop_rho(const CircleGrid& G, const PiecewiseControl& u, double t,
                     Problem problem) {
    return rho(open_loop_profile(G, u, t), problem);
}

TrajectoryRecord simulate_open_loop(const CircleGrid& G, const PiecewiseControl& u,
                                    double T, Problem problem) {
    return simulate_impl(G, u, T, problem, true);
}

TrajectoryRecord simulate_open_loop_serial(const CircleGrid& G, const PiecewiseControl& u,
                                           double T, Problem problem) {
    return simulate_impl(G, u, T, problem, false);
}

PiecewiseControl random_bang_bang(std::uint64_t seed, double duration, double mean_gap) {
    if (!(duration > 0.0) || !(mean_gap > 0.0)) {
        throw std::invalid_argument("random_bang_bang: duration and mean_gap must be positive");
    }
    std::mt19937_64 rng(seed);
    double sign = unit_double(rng) < 0.5 ? -1.0 : 1.0;
    std::vector<double> bp{0.0};
    std::vector<double> vals{sign};
    double t = 0.0;
    while (true) {
        // Exponential gap; 1 - u keeps the argument in (0, 1].
        const double gap = -mean_gap * std::log(1.0 - unit_double(rng));
        t += std::max(gap, 1e-6);
        if (t >= duration) break;
        sign = -sign;
        bp.push_back(t);
        vals.push_back(sign);
    }
    return PiecewiseControl(std::move(bp), std::move(vals), duration);
}

PiecewiseControl sup_chasing_control(const CircleGrid& G, double duration) {
    if (!(duration > 0.0)) {
        throw std::invalid_argument("sup_chasing_control: duration must be positive");
    }
    const std::size_t m = G.m;
    const double h = G.spacing();
    std::vector<double> w = G.values;  // running characteristic values
    auto argmax = [&]() {
        std::size_t best = 0;
        for (std::size_t j = 1; j < m; ++j) {
            if (std::abs(w[j]) > std::abs(w[best])) best = j;
        }
        return best;
    };

    std::vector<double> bp;
    std::vector<double> vals;
    const auto periods = static_cast<std::size_t>(std::ceil(duration / kTwoPi));
    std::size_t target = argmax();
    double current = -sgn(w[target]);
    bp.push_back(0.0);
    vals.push_back(current);
    for (std::size_t p = 0; p < periods; ++p) {
        const double t0 = static_cast<double>(p) * kTwoPi;
        for (std::size_t j = 0; j < m; ++j) {
            w[j] += current;  // the characteristic through x_j crosses at t0 + x_j
            if (j == target) {
                target = argmax();
                const double next = -sgn(w[target]);
                if (next != current) {
                    // Retarget between crossings so the breakpoint never
                    // collides with a kick instant.
                    const double tb = t0 + G.point(j) + 0.5 * h;
                    if (tb < duration && tb > bp.back()) {
                        bp.push_back(tb);
                        vals.push_back(next);
                        current = next;
                    }
                }
            }
        }
    }
    return PiecewiseControl(std::move(bp), std::move(vals), duration);
}

std::vector<NamedControl> adversarial_suite(const CircleGrid& G, double T,
                                            std::size_t count, std::uint64_t seed) {
    std::vector<NamedControl> suite;
    suite.reserve(count);
    const double dur = std::max(T, 1e-6);
    const double fixed[] = {0.0, 1.0, -1.0, 0.5, -0.5};
    for (double c : fixed) {
        if (suite.size() >= count) return suite;
        suite.push_back({"constant(" + std::to_string(c) + ")",
                         PiecewiseControl::constant(c, dur)});
    }
    if (suite.size() < count) {
        suite.push_back({"sup-chasing", sup_chasing_control(G, dur)});
    }
    std::size_t i = 0;
    while (suite.size() < count) {
        suite.push_back({"bang-bang#" + std::to_string(i),
                         random_bang_bang(seed + i, dur, kTwoPi / 3.0)});
        ++i;
    }
    return suite;
}

BoundCheckReport bound_check(const CircleGrid& G, const std::vector<NamedControl>& controls,
                             double T, Problem problem, double c1, double c2) {
    if (!(T > 0.0)) {
        throw std::invalid_argument("bound_check: horizon must be positive");
    }
    BoundCheckReport rep;
    rep.c1 = c1;
    rep.c2 = c2;
    rep.rho0 = rho(G, problem);
    rep.rows.resize(controls.size());

#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(controls.size()); ++i) {
        const auto& nc = controls[static_cast<std::size_t>(i)];
        BoundCheckRow row;
        row.kind = nc.kind;
        row.rho0 = open_loop_rho(G, nc.control, 0.0, problem);
        row.rhoT = open_loop_rho(G, nc.control, T, problem);
        row.M = std::min(row.rho0, row.rhoT);
        row.rate = (row.rho0 - row.rhoT) / T;
        row.within_tol = row.rate <= 1.0 + rep.tol(T, row.M);
        rep.rows[static_cast<std::size_t>(i)] = row;
    }
    rep.max_rate = -HUGE_VAL;
    for (const auto& row : rep.rows) {
        rep.max_rate = std::max(rep.max_rate, row.rate);
        if (!row.within_tol) ++rep.violations;
    }
    return rep;
}

}  // namespace stringdamp
