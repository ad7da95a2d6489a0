#pragma once

// Independent verification oracle: the N-oscillator cosine truncation of the
// string with the point load expanded in the even basis,
//
//   q_n' = p_n,   p_n' = -n^2 q_n + u b_n,
//   b_0 = 1/(2pi),  b_n = 1/pi  (n >= 1),
//
// integrated with classical fixed-step RK4 under the regularized feedback
// u = -sat(f_t(0)/eps), f_t(0) = sum p_n.  Trusted only in transversal
// regimes (|f_t(0)| well away from 0); sliding makes the truncation chatter.

#include <cstddef>
#include <functional>
#include <vector>

#include "stringdamp/even_field.hpp"

namespace stringdamp {

struct ModalState {
    std::vector<double> q;  // displacement cosine coefficients q_0..q_N
    std::vector<double> p;  // velocity cosine coefficients p_0..p_N

    std::size_t modes() const { return q.size(); }  // N + 1 entries
    static ModalState zero(std::size_t n_max);
};

// Cosine coefficients b_0..b_N of the unit point load at x = 0.
std::vector<double> dirac_cosine_coefficients(std::size_t n_max);

ModalState modal_rhs(const ModalState& s, double u);

double load_point_velocity(const ModalState& s);  // sum p_n

// E = (1/2) sum w_n (p_n^2 + n^2 q_n^2), w_0 = 2pi, w_n = pi.  With these
// weights dE/dt = u * f_t(0), so the saturated feedback is dissipative.
double modal_energy(const ModalState& s);

ModalState project_state(const StatePair& f, std::size_t n_max);
ModalState project_state(const GridState& f, std::size_t n_max);
// From a traveling-wave profile: reconstructs (f0, f1) first.
ModalState project_state(const CircleGrid& g, std::size_t n_max);

struct ModalTrajectory {
    std::vector<double> times;   // every accepted step, starting at 0
    std::vector<double> ft0;     // f_t(0) = sum p_n
    std::vector<double> u;       // control applied over the step
    std::vector<double> energy;  // modal energy
    ModalState final_state;
    std::vector<double> sample_times;   // requested snapshot times
    std::vector<ModalState> samples;    // full states at the nearest steps

    double ft0_at(double t) const;  // nearest recorded step
    double u_at(double t) const;
};

using ControlLaw = std::function<double(const ModalState&, double)>;

// Fixed-step RK4 with the control re-evaluated at every stage; the step is
// T/n with n = round(T/dt) so the horizon is hit exactly.  Throws
// std::overflow_error if the state leaves the finite range.
ModalTrajectory integrate_modal(const ModalState& s0, double T, double dt,
                                const ControlLaw& law,
                                const std::vector<double>& sample_times = {});

ModalTrajectory integrate_feedback(const ModalState& s0, double T, double dt,
                                   double eps,
                                   const std::vector<double>& sample_times = {});

}  // namespace stringdamp
