#include "stringdamp/galerkin_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace stringdamp {

namespace {

double saturate(double x) { return std::clamp(x, -1.0, 1.0); }

}  // namespace

ModalState ModalState::zero(std::size_t n_max) {
    ModalState s;
    s.q.assign(n_max + 1, 0.0);
    s.p.assign(n_max + 1, 0.0);
    return s;
}

std::vector<double> dirac_cosine_coefficients(std::size_t n_max) {
    std::vector<double> b(n_max + 1, 2.0 / kTwoPi);
    b[0] = 1.0 / kTwoPi;
    return b;
}

ModalState modal_rhs(const ModalState& s, double u) {
    if (s.q.size() != s.p.size()) {
        throw std::invalid_argument("modal_rhs: component dimensions differ");
    }
    const std::vector<double> b = dirac_cosine_coefficients(s.modes() - 1);
    ModalState d = ModalState::zero(s.modes() - 1);
    for (std::size_t n = 0; n < s.modes(); ++n) {
        const double nn = static_cast<double>(n);
        d.q[n] = s.p[n];
        d.p[n] = -nn * nn * s.q[n] + u * b[n];
    }
    return d;
}

double load_point_velocity(const ModalState& s) {
    double acc = 0.0;
    for (double x : s.p) acc += x;
    return acc;
}

double modal_energy(const ModalState& s) {
    double e = 0.0;
    for (std::size_t n = 0; n < s.modes(); ++n) {
        const double w = (n == 0) ? kTwoPi : 0.5 * kTwoPi;
        const double nn = static_cast<double>(n);
        e += 0.5 * w * (s.p[n] * s.p[n] + nn * nn * s.q[n] * s.q[n]);
    }
    return e;
}

ModalState project_state(const StatePair& f, std::size_t n_max) {
    ModalState s = ModalState::zero(n_max);
    for (std::size_t n = 0; n <= n_max && n < f.f0.coeffs.size(); ++n) s.q[n] = f.f0.coeffs[n];
    for (std::size_t n = 0; n <= n_max && n < f.f1.coeffs.size(); ++n) s.p[n] = f.f1.coeffs[n];
    return s;
}

ModalState project_state(const GridState& f, std::size_t n_max) {
    ModalState s = ModalState::zero(n_max);
    s.q = cosine_analysis(f.f0, n_max).coeffs;
    s.p = cosine_analysis(f.f1, n_max).coeffs;
    return s;
}

ModalState project_state(const CircleGrid& g, std::size_t n_max) {
    return project_state(reconstruct_state(g), n_max);
}

namespace {

std::size_t nearest_step(const std::vector<double>& times, double t) {
    if (times.size() < 2) return 0;
    const double h = times[1] - times[0];
    if (!(h > 0.0)) return 0;
    const long i = std::clamp<long>(std::lround(t / h), 0, static_cast<long>(times.size()) - 1);
    return static_cast<std::size_t>(i);
}

}  // namespace

double ModalTrajectory::ft0_at(double t) const {
    if (ft0.empty()) return 0.0;
    return ft0[nearest_step(times, t)];
}

double ModalTrajectory::u_at(double t) const {
    if (u.empty()) return 0.0;
    return u[nearest_step(times, t)];
}

ModalTrajectory integrate_modal(const ModalState& s0, double T, double dt,
                                const ControlLaw& law,
                                const std::vector<double>& sample_times) {
    if (!(T >= 0.0)) throw std::invalid_argument("integrate_modal: horizon must be nonnegative");
    if (!(dt > 0.0)) throw std::invalid_argument("integrate_modal: step must be positive");
    if (s0.q.size() != s0.p.size() || s0.q.empty()) {
        throw std::invalid_argument("integrate_modal: malformed initial state");
    }
    const std::size_t dim = s0.modes();
    const std::vector<double> b = dirac_cosine_coefficients(dim - 1);

    if (T == 0.0) {
        ModalTrajectory traj;
        traj.times = {0.0};
        traj.ft0 = {load_point_velocity(s0)};
        traj.u = {law(s0, 0.0)};
        traj.energy = {modal_energy(s0)};
        traj.final_state = s0;
        traj.sample_times = sample_times;
        traj.samples.assign(sample_times.size(), s0);
        return traj;
    }

    const auto n_steps = std::max<long>(1, std::llround(T / dt));
    const double h = T / static_cast<double>(n_steps);

    // Requested snapshots resolved to step indices.
    std::vector<long> want(sample_times.size());
    for (std::size_t i = 0; i < sample_times.size(); ++i) {
        want[i] = std::clamp<long>(std::llround(sample_times[i] / h), 0, n_steps);
    }

    ModalTrajectory traj;
    traj.times.reserve(static_cast<std::size_t>(n_steps) + 1);
    traj.ft0.reserve(static_cast<std::size_t>(n_steps) + 1);
    traj.u.reserve(static_cast<std::size_t>(n_steps) + 1);
    traj.energy.reserve(static_cast<std::size_t>(n_steps) + 1);
    traj.sample_times = sample_times;
    traj.samples.resize(sample_times.size());

    ModalState s = s0;
    ModalState stage = s0;
    std::vector<double> k1q(dim), k1p(dim), k2q(dim), k2p(dim), k3q(dim), k3p(dim),
        k4q(dim), k4p(dim);

    auto rhs_into = [&](const ModalState& y, double u, std::vector<double>& dq,
                        std::vector<double>& dp) {
        for (std::size_t n = 0; n < dim; ++n) {
            const double nn = static_cast<double>(n);
            dq[n] = y.p[n];
            dp[n] = -nn * nn * y.q[n] + u * b[n];
        }
    };
    auto record_samples = [&](long step_index, const ModalState& y) {
        for (std::size_t i = 0; i < want.size(); ++i) {
            if (want[i] == step_index) traj.samples[i] = y;
        }
    };

    record_samples(0, s);
    for (long step = 0; step < n_steps; ++step) {
        const double t = static_cast<double>(step) * h;
        const double u1 = law(s, t);
        traj.times.push_back(t);
        traj.ft0.push_back(load_point_velocity(s));
        traj.u.push_back(u1);
        traj.energy.push_back(modal_energy(s));

        rhs_into(s, u1, k1q, k1p);
        for (std::size_t n = 0; n < dim; ++n) {
            stage.q[n] = s.q[n] + 0.5 * h * k1q[n];
            stage.p[n] = s.p[n] + 0.5 * h * k1p[n];
        }
        rhs_into(stage, law(stage, t + 0.5 * h), k2q, k2p);
        for (std::size_t n = 0; n < dim; ++n) {
            stage.q[n] = s.q[n] + 0.5 * h * k2q[n];
            stage.p[n] = s.p[n] + 0.5 * h * k2p[n];
        }
        rhs_into(stage, law(stage, t + 0.5 * h), k3q, k3p);
        for (std::size_t n = 0; n < dim; ++n) {
            stage.q[n] = s.q[n] + h * k3q[n];
            stage.p[n] = s.p[n] + h * k3p[n];
        }
        rhs_into(stage, law(stage, t + h), k4q, k4p);
        for (std::size_t n = 0; n < dim; ++n) {
            s.q[n] += h / 6.0 * (k1q[n] + 2.0 * k2q[n] + 2.0 * k3q[n] + k4q[n]);
            s.p[n] += h / 6.0 * (k1p[n] + 2.0 * k2p[n] + 2.0 * k3p[n] + k4p[n]);
        }

        const double probe = load_point_velocity(s);
        if (!std::isfinite(probe)) {
            throw std::overflow_error("integrate_modal: state diverged at t = " +
                                      std::to_string(t + h) + " (step " +
                                      std::to_string(step + 1) + ")");
        }
        record_samples(step + 1, s);
    }
    traj.times.push_back(T);
    traj.ft0.push_back(load_point_velocity(s));
    traj.u.push_back(law(s, T));
    traj.energy.push_back(modal_energy(s));
    traj.final_state = s;
    return traj;
}

ModalTrajectory integrate_feedback(const ModalState& s0, double T, double dt, double eps,
                                   const std::vector<double>& sample_times) {
    if (!(eps > 0.0)) {
        throw std::invalid_argument("integrate_feedback: regularization width must be positive");
    }
    ControlLaw law = [eps](const ModalState& s, double) {
        return -saturate(load_point_velocity(s) / eps);
    };
    return integrate_modal(s0, T, dt, law, sample_times);
}

}  // namespace stringdamp
