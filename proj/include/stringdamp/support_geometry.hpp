#pragma once

// Momentum-side objects: the scalar profile zeta of a momentum, support
// functions of the exact and asymptotic reachable sets, the steepest-descent
// state attaining the support value, and the dry-friction feedback.
//
// A momentum is a pair (xi0, xi1) of even cosine series with coefficients
// (phi_n) and (psi_n).  Its profile is
//
//   zeta(t) = xi1(t) + int_0^t xi0  = psi_0 + phi_0 t
//             + sum_{n>=1} ( psi_n cos(nt) + (phi_n / n) sin(nt) ).
//
// The support function of the reachable set over horizon T is
// H_D(T) = int_0^T |zeta|; the normalized limit set has support
// H_Omega = (1/2pi) int_0^{2pi} |zeta| (defined when phi_0 = 0, so zeta is
// periodic), and H_D(2 pi k) = 2 pi k H_Omega holds exactly.

#include <cstddef>
#include <vector>

#include "stringdamp/even_field.hpp"

namespace stringdamp {

struct Momentum {
    EvenFourier xi0;  // coefficients phi_n
    EvenFourier xi1;  // coefficients psi_n
};

double zeta(const Momentum& xi, double t);

// Upper bound on |zeta'|, used to certify zero-free intervals.
double zeta_lipschitz_bound(const Momentum& xi);

// All sign changes of zeta in [a, b], each bracketed by bisection to 1e-12.
// Zero-free subintervals are pruned with the Lipschitz bound, so crossings
// cannot be skipped over.
std::vector<double> zeta_zero_crossings(const Momentum& xi, double a, double b);

// int_0^T |zeta|: Gauss-Legendre panels between consecutive sign changes
// (zeta is one-signed on each panel, so the kink of |zeta| never enters a
// panel).  Relative error ~1e-12 for band-limited momenta.
double support_D(const Momentum& xi, double T);

// (1/2pi) int_0^{2pi} |zeta|.  Rejects phi_0 != 0 (zeta non-periodic).
double support_Omega(const Momentum& xi);

// The boundary state attaining the support value: with s = sign(zeta),
//   f1(x) = T * even_part(s)(x),
//   f0(x) = -T * int_0^x odd_part(s),
// sampled on an m-point grid (trapezoid cumulative integral).  Its
// traveling-wave profile is T * sign(zeta(-x)), so rho(f) = 2 pi T, and
// <xi, f> = T int_0^{2pi} |zeta| under the Lebesgue pairing below.
// Rejects the zero momentum (zeta identically zero).
GridState steepest_state(const Momentum& xi, double T, std::size_t m);

// Feedback u = -sign g(0); note g(0) = f1(0) since the odd part vanishes at
// the load point.  Returns 0 at g(0) = 0; the sliding selection in [-1, 1]
// is produced by the closed-loop solver, not here.
double dry_friction_control(const CircleGrid& g);

// Lebesgue pairing of a momentum with a coefficient state:
// sum_n w_n (phi_n a_n + psi_n b_n), w_0 = 2pi, w_n = pi for n >= 1
// (the L2 pairing of even functions on the circle).
double pair_momentum_state(const Momentum& xi, const EvenFourier& f0,
                           const EvenFourier& f1);

}  // namespace stringdamp
