#include "stringdamp/support_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stringdamp {

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1, 1] (positive half).
constexpr int kGlPoints = 8;
constexpr double kGlNode[kGlPoints] = {
    0.0950125098376374401853, 0.2816035507792589132305, 0.4580167776572273863424,
    0.6178762444026437484467, 0.7554044083550030338951, 0.8656312023878317438805,
    0.9445750230732325760780, 0.9894009349916499325962};
constexpr double kGlWeight[kGlPoints] = {
    0.1894506104550684962854, 0.1826034150449235888667, 0.1691565193950025381893,
    0.1495959888165767320815, 0.1246289712555338720525, 0.0951585116824927848099,
    0.0622535239386478928628, 0.0271524594117540948518};

double sgn(double x) { return (x > 0.0) ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

std::size_t band_limit(const Momentum& xi) {
    return std::max(xi.xi0.degree(), xi.xi1.degree());
}

bool is_zero_momentum(const Momentum& xi) {
    auto all_zero = [](const std::vector<double>& c) {
        return std::all_of(c.begin(), c.end(), [](double x) { return x == 0.0; });
    };
    return all_zero(xi.xi0.coeffs) && all_zero(xi.xi1.coeffs);
}

// Signed integral of zeta over [a, b] by composite Gauss-Legendre; subpanel
// length keeps (band * length) small so the rule is accurate to round-off.
double integrate_zeta(const Momentum& xi, double a, double b) {
    if (b <= a) return 0.0;
    const double len = b - a;
    const auto band = static_cast<double>(band_limit(xi) + 1);
    const auto subs = static_cast<std::size_t>(std::ceil(len * band / 2.0)) + 1;
    const double sub_len = len / static_cast<double>(subs);
    double total = 0.0;
    for (std::size_t s = 0; s < subs; ++s) {
        const double lo = a + static_cast<double>(s) * sub_len;
        const double mid = lo + 0.5 * sub_len;
        const double half = 0.5 * sub_len;
        double acc = 0.0;
        for (int i = 0; i < kGlPoints; ++i) {
            acc += kGlWeight[i] * (zeta(xi, mid - half * kGlNode[i]) +
                                   zeta(xi, mid + half * kGlNode[i]));
        }
        total += half * acc;
    }
    return total;
}

double bisect_crossing(const Momentum& xi, double lo, double hi, double flo) {
    // Invariant: sign change across [lo, hi].
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        const double fm = zeta(xi, mid);
        if (fm == 0.0) return mid;
        if (sgn(fm) == sgn(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Recursive search over [x, y] given endpoint values.  Intervals on which
// |zeta| stays provably positive (via the Lipschitz bound) are pruned, so a
// sign change cannot hide between scan points.
void search_crossings(const Momentum& xi, double lip, double x, double y, double fx,
                      double fy, std::vector<double>* out) {
    constexpr double kMinWidth = 1e-9;
    const double width = y - x;
    if (fx != 0.0 && fy != 0.0 && sgn(fx) != sgn(fy)) {
        out->push_back(bisect_crossing(xi, x, y, fx));
        return;
    }
    if (std::min(std::abs(fx), std::abs(fy)) > 0.5001 * lip * width) {
        return;  // certified zero-free
    }
    if (width < kMinWidth) {
        return;  // at most a tangential dip of negligible measure
    }
    const double mid = 0.5 * (x + y);
    double fm = zeta(xi, mid);
    if (fm == 0.0) {
        out->push_back(mid);
        const double nudge = 1e-12;
        search_crossings(xi, lip, x, mid - nudge, fx, zeta(xi, mid - nudge), out);
        search_crossings(xi, lip, mid + nudge, y, zeta(xi, mid + nudge), fy, out);
        return;
    }
    search_crossings(xi, lip, x, mid, fx, fm, out);
    search_crossings(xi, lip, mid, y, fm, fy, out);
}

}  // namespace

double zeta(const Momentum& xi, double t) {
    double s = 0.0;
    const auto& phi = xi.xi0.coeffs;
    const auto& psi = xi.xi1.coeffs;
    if (!psi.empty()) s += psi[0];
    if (!phi.empty()) s += phi[0] * t;
    for (std::size_t n = 1; n < psi.size(); ++n) {
        s += psi[n] * std::cos(static_cast<double>(n) * t);
    }
    for (std::size_t n = 1; n < phi.size(); ++n) {
        s += phi[n] / static_cast<double>(n) * std::sin(static_cast<double>(n) * t);
    }
    return s;
}

double zeta_lipschitz_bound(const Momentum& xi) {
    double lip = 0.0;
    const auto& phi = xi.xi0.coeffs;
    const auto& psi = xi.xi1.coeffs;
    if (!phi.empty()) lip += std::abs(phi[0]);
    for (std::size_t n = 1; n < psi.size(); ++n) {
        lip += static_cast<double>(n) * std::abs(psi[n]);
    }
    for (std::size_t n = 1; n < phi.size(); ++n) {
        lip += std::abs(phi[n]);
    }
    return lip;
}

std::vector<double> zeta_zero_crossings(const Momentum& xi, double a, double b) {
    std::vector<double> out;
    if (b <= a) return out;
    const double lip = zeta_lipschitz_bound(xi);
    if (lip == 0.0) return out;  // zeta is constant
    double fa = zeta(xi, a);
    if (fa == 0.0) {
        out.push_back(a);
        a += 1e-12;
        fa = zeta(xi, a);
    }
    double fb = zeta(xi, b);
    if (fb == 0.0) {
        out.push_back(b);
        b -= 1e-12;
        fb = zeta(xi, b);
    }
    // Seed the search with sub-period chunks so the prune bound is local.
    const auto chunks =
        static_cast<std::size_t>(std::ceil((b - a) * static_cast<double>(band_limit(xi) + 1)));
    const double step = (b - a) / static_cast<double>(std::max<std::size_t>(chunks, 1));
    double x = a;
    double fx = fa;
    while (x < b) {
        const double y = std::min(x + step, b);
        const double fy = (y == b) ? fb : zeta(xi, y);
        search_crossings(xi, lip, x, y, fx, fy, &out);
        x = y;
        fx = fy;
    }
    std::sort(out.begin(), out.end());
    return out;
}

double support_D(const Momentum& xi, double T) {
    if (T < 0.0) {
        throw std::invalid_argument("support_D: horizon must be nonnegative");
    }
    if (T == 0.0 || is_zero_momentum(xi)) return 0.0;
    std::vector<double> edges = zeta_zero_crossings(xi, 0.0, T);
    edges.insert(edges.begin(), 0.0);
    edges.push_back(T);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        total += std::abs(integrate_zeta(xi, edges[i], edges[i + 1]));
    }
    return total;
}

double support_Omega(const Momentum& xi) {
    if (!xi.xi0.coeffs.empty() && xi.xi0.coeffs[0] != 0.0) {
        throw std::invalid_argument(
            "support_Omega: phi_0 must vanish (zeta would not be periodic)");
    }
    return support_D(xi, kTwoPi) / kTwoPi;
}

GridState steepest_state(const Momentum& xi, double T, std::size_t m) {
    if (T < 0.0) {
        throw std::invalid_argument("steepest_state: horizon must be nonnegative");
    }
    if (is_zero_momentum(xi)) {
        throw std::invalid_argument("steepest_state: degenerate momentum, zeta vanishes identically");
    }
    CircleGrid s = CircleGrid::zeros(m);
    for (std::size_t j = 0; j < m; ++j) {
        s[j] = sgn(zeta(xi, s.point(j)));
    }
    auto [even, odd] = split_even_odd(s);
    const double h = s.spacing();
    CircleGrid f0 = CircleGrid::zeros(m);
    CircleGrid f1 = CircleGrid::zeros(m);
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        if (j > 0) acc -= T * 0.5 * h * (odd[j - 1] + odd[j]);
        f0[j] = acc;
        f1[j] = T * even[j];
    }
    return GridState{f0, f1};
}

double dry_friction_control(const CircleGrid& g) { return -sgn(g[0]); }

double pair_momentum_state(const Momentum& xi, const EvenFourier& f0,
                           const EvenFourier& f1) {
    double s = 0.0;
    const std::size_t n0 = std::min(xi.xi0.coeffs.size(), f0.coeffs.size());
    const std::size_t n1 = std::min(xi.xi1.coeffs.size(), f1.coeffs.size());
    for (std::size_t n = 0; n < n0; ++n) {
        const double w = (n == 0) ? kTwoPi : 0.5 * kTwoPi;
        s += w * xi.xi0.coeffs[n] * f0.coeffs[n];
    }
    for (std::size_t n = 0; n < n1; ++n) {
        const double w = (n == 0) ? kTwoPi : 0.5 * kTwoPi;
        s += w * xi.xi1.coeffs[n] * f1.coeffs[n];
    }
    return s;
}

}  // namespace stringdamp
