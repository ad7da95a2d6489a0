#include "stringdamp/friction_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stringdamp {

namespace detail {

double mod_two_pi(double x) {
    double y = std::fmod(x, kTwoPi);
    if (y < 0.0) y += kTwoPi;
    if (y >= kTwoPi) y = 0.0;
    return y;
}

// The crossing times are s = z + t - 2 pi k; reduced to dz = z mod 2pi the
// latest one in [0, t] is t itself when dz = 0 (the current-instant kick) and
// t - (2pi - dz) otherwise.  The latest crossing coincides with t exactly
// when z is on the load point; all times are resolved with small tolerances
// so grid-aligned inputs are classified reliably despite round-off.
CrossingGeometry crossing_geometry(std::size_t m, double z, double t) {
    CrossingGeometry geo;
    const double h = kTwoPi / static_cast<double>(m);
    const double x0 = mod_two_pi(z + t);
    long j0 = std::lround(x0 / h);
    if (j0 >= static_cast<long>(m)) j0 = 0;  // wrap; the period index absorbs it
    geo.j0 = static_cast<std::size_t>(j0);

    const double dz = mod_two_pi(z);
    const double zu = dz / h;
    const long zi = std::lround(zu);
    geo.at_load = std::abs(zu - static_cast<double>(zi)) <= 1e-6 &&
                  (zi % static_cast<long>(m)) == 0;
    const double offset = geo.at_load ? 0.0 : kTwoPi - dz;

    const double periods_back = (t - offset) / kTwoPi;
    geo.n_cross = static_cast<long>(std::floor(periods_back + 1e-9)) + 1;
    if (geo.n_cross <= 0) {
        geo.n_cross = 0;
        return geo;
    }
    geo.s0 = t - offset;
    geo.q_hi = std::lround((geo.s0 - static_cast<double>(j0) * h) / kTwoPi);
    return geo;
}

}  // namespace detail

InclusionStep solve_scalar_inclusion(double rhs) {
    if (rhs > 0.5) return {rhs - 0.5, 1.0};
    if (rhs < -0.5) return {rhs + 0.5, -1.0};
    return {0.0, 2.0 * rhs};
}

std::vector<CharacteristicStep> evolve_characteristic(double g0, std::size_t k) {
    std::vector<CharacteristicStep> steps;
    steps.reserve(k + 1);
    double g = g0;
    for (std::size_t j = 0; j <= k; ++j) {
        const InclusionStep st = solve_scalar_inclusion(g);
        steps.push_back({st.phi, st.v, g});
        g -= st.v;
    }
    return steps;
}

std::size_t SlidingSignal::nearest_index(double t) const {
    if (phi.empty()) return 0;
    long i = std::lround(t / time_step());
    i = std::clamp<long>(i, 0, static_cast<long>(phi.size()) - 1);
    return static_cast<std::size_t>(i);
}

double SlidingSignal::phi_at(double t) const { return phi[nearest_index(t)]; }
double SlidingSignal::v_at(double t) const { return v[nearest_index(t)]; }

namespace {

SlidingSignal solve_phi_impl(const CircleGrid& G, double T, bool parallel) {
    if (!(T >= 0.0)) {
        throw std::invalid_argument("solve_phi: horizon must be nonnegative");
    }
    SlidingSignal sig;
    sig.m = G.m;
    sig.periods = static_cast<std::size_t>(std::floor(T / kTwoPi)) + 2;
    sig.horizon = T;
    const std::size_t m = sig.m;
    const std::size_t periods = sig.periods;
    sig.phi.resize(periods * m);
    sig.v.resize(periods * m);
    sig.rhs.resize(periods * m);
    sig.cum_v.resize((periods + 1) * m);

#pragma omp parallel for schedule(static) if (parallel)
    for (long j = 0; j < static_cast<long>(m); ++j) {
        double g = G[static_cast<std::size_t>(j)];
        double acc = 0.0;
        for (std::size_t p = 0; p < periods; ++p) {
            const std::size_t i = p * m + static_cast<std::size_t>(j);
            sig.cum_v[i] = acc;
            sig.rhs[i] = g;
            const InclusionStep st = solve_scalar_inclusion(g);
            sig.phi[i] = st.phi;
            sig.v[i] = st.v;
            acc += st.v;
            g -= st.v;
        }
        sig.cum_v[periods * m + static_cast<std::size_t>(j)] = acc;
    }
    return sig;
}

double field_at_impl(const CircleGrid& G, const SlidingSignal& sig, double z, double t,
                     LoadPointRule rule) {
    const std::size_t m = sig.m;
    const detail::CrossingGeometry geo = detail::crossing_geometry(m, z, t);
    const double base = G[geo.j0];
    if (geo.n_cross <= 0) return base;
    long q_hi = std::min<long>(geo.q_hi, static_cast<long>(sig.periods) - 1);
    long q_lo = std::max<long>(q_hi - (geo.n_cross - 1), 0);
    if (q_hi < q_lo) return base;
    double kicks = sig.cum_v[static_cast<std::size_t>(q_hi + 1) * m + geo.j0] -
                   sig.cum_v[static_cast<std::size_t>(q_lo) * m + geo.j0];
    if (geo.at_load) {
        const double v_now = sig.v[static_cast<std::size_t>(q_hi) * m + geo.j0];
        kicks -= (rule == LoadPointRule::trace) ? 0.5 * v_now : v_now;
    }
    return base - kicks;
}

std::vector<double> make_sample_times(double T, std::size_t intra) {
    std::vector<double> times;
    const double step = kTwoPi / static_cast<double>(intra + 1);
    double t = 0.0;
    std::size_t i = 0;
    while (t < T - 1e-12) {
        times.push_back(t);
        ++i;
        t = static_cast<double>(i) * step;
    }
    times.push_back(T);
    return times;
}

TrajectoryRecord trajectory_rho_impl(const CircleGrid& G, double T, Problem problem,
                                     std::size_t intra, bool parallel) {
    const SlidingSignal sig = solve_phi_impl(G, T, parallel);
    TrajectoryRecord rec;
    rec.problem = problem;
    rec.times = make_sample_times(T, intra);
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
            const double val = field_at_impl(G, sig, G.point(j), t, LoadPointRule::trace);
            vmax = std::max(vmax, val);
            vmin = std::min(vmin, val);
        }
        rec.rho_stop[static_cast<std::size_t>(i)] = kTwoPi * std::max(std::abs(vmax), std::abs(vmin));
        rec.rho_damp[static_cast<std::size_t>(i)] = kTwoPi * 0.5 * (vmax - vmin);
        rec.u[static_cast<std::size_t>(i)] = -sig.v_at(t);
        rec.phi0[static_cast<std::size_t>(i)] = sig.phi_at(t);
    }
    return rec;
}

}  // namespace

SlidingSignal solve_phi(const CircleGrid& G, double T) { return solve_phi_impl(G, T, true); }

SlidingSignal solve_phi_serial(const CircleGrid& G, double T) {
    return solve_phi_impl(G, T, false);
}

double field_at(const CircleGrid& G, const SlidingSignal& sig, double z, double t,
                LoadPointRule rule) {
    if (G.m != sig.m) {
        throw std::invalid_argument("field_at: grid size does not match the signal");
    }
    if (!(t >= 0.0) || t > sig.horizon + 1e-9) {
        throw std::out_of_range("field_at: time beyond the computed horizon");
    }
    return field_at_impl(G, sig, z, t, rule);
}

CircleGrid profile_at(const CircleGrid& G, const SlidingSignal& sig, double t,
                      LoadPointRule rule) {
    if (G.m != sig.m) {
        throw std::invalid_argument("profile_at: grid size does not match the signal");
    }
    if (!(t >= 0.0) || t > sig.horizon + 1e-9) {
        throw std::out_of_range("profile_at: time beyond the computed horizon");
    }
    CircleGrid out = CircleGrid::zeros(G.m);
    for (std::size_t j = 0; j < G.m; ++j) {
        out[j] = field_at_impl(G, sig, G.point(j), t, rule);
    }
    return out;
}

std::vector<double> trajectory_sample_times(double T, std::size_t intra) {
    if (!(T >= 0.0)) {
        throw std::invalid_argument("trajectory_sample_times: horizon must be nonnegative");
    }
    return make_sample_times(T, intra);
}

TrajectoryRecord trajectory_rho(const CircleGrid& G, double T, Problem problem,
                                std::size_t intra) {
    return trajectory_rho_impl(G, T, problem, intra, true);
}

TrajectoryRecord trajectory_rho_serial(const CircleGrid& G, double T, Problem problem,
                                       std::size_t intra) {
    return trajectory_rho_impl(G, T, problem, intra, false);
}

}  // namespace stringdamp
