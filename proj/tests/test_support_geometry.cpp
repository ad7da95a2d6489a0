#include <cmath>

#include "doctest.h"
#include "stringdamp/galerkin_oracle.hpp"
#include "stringdamp/support_geometry.hpp"
#include "test_util.hpp"

using namespace stringdamp;

namespace {

Momentum make_momentum(std::vector<double> phi, std::vector<double> psi) {
    Momentum xi;
    xi.xi0 = EvenFourier(std::move(phi));
    xi.xi1 = EvenFourier(std::move(psi));
    return xi;
}

// Midpoint-rule reference for int_0^T |zeta|; independent of the panel
// quadrature used by support_D.
double riemann_abs_zeta(const Momentum& xi, double T, std::size_t n) {
    const double h = T / static_cast<double>(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += std::abs(zeta(xi, (static_cast<double>(i) + 0.5) * h));
    }
    return acc * h;
}

}  // namespace

TEST_CASE("zeta: closed-form examples") {
    CHECK(zeta(make_momentum({}, {}), 1.2345) == 0.0);

    const Momentum cosine = make_momentum({}, {0.0, 1.0});
    const Momentum sine = make_momentum({0.0, 2.0}, {});
    const Momentum drift = make_momentum({0.5}, {1.0});
    for (double t : {0.0, 0.3, 1.7, 4.4, 6.1}) {
        CHECK(zeta(cosine, t) == doctest::Approx(std::cos(t)).epsilon(1e-15));
        CHECK(zeta(sine, t) == doctest::Approx(2.0 * std::sin(t)).epsilon(1e-15));
        CHECK(zeta(drift, t) == doctest::Approx(1.0 + 0.5 * t).epsilon(1e-15));
    }
}

TEST_CASE("support_D: frozen values and input checks") {
    CHECK(support_D(make_momentum({0.0, 0.7}, {0.0, 0.0, 1.3}), 0.0) == 0.0);
    CHECK(support_D(make_momentum({}, {0.0, 1.0}), kTwoPi) ==
          doctest::Approx(4.0).epsilon(1e-10));
    CHECK(support_D(make_momentum({}, {1.0}), 5.0) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK_THROWS_AS(support_D(make_momentum({}, {1.0}), -1.0), std::invalid_argument);
}

TEST_CASE("support_D matches a dense Riemann reference") {
    std::mt19937_64 rng(101);
    for (int rep = 0; rep < 10; ++rep) {
        const Momentum xi = testutil::random_momentum(rng, 6, false);
        const double T = testutil::uniform(rng, 0.5, 12.0);
        const double ref = riemann_abs_zeta(xi, T, 400000);
        const double got = support_D(xi, T);
        CHECK(got == doctest::Approx(ref).epsilon(1e-5));
    }
}

TEST_CASE("support_Omega: frozen values and the periodicity requirement") {
    CHECK(support_Omega(make_momentum({}, {})) == 0.0);
    CHECK(support_Omega(make_momentum({}, {0.0, 1.0})) ==
          doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-10));
    CHECK(support_Omega(make_momentum({}, {1.0})) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(support_Omega(make_momentum({0.25}, {1.0})), std::invalid_argument);
}

TEST_CASE("support function periodic equality at whole periods") {
    std::mt19937_64 rng(102);
    for (int rep = 0; rep < 25; ++rep) {
        const Momentum xi = testutil::random_momentum(rng, 8, true);
        const double homega = support_Omega(xi);
        for (int k : {1, 2, 5}) {
            const double T = kTwoPi * static_cast<double>(k);
            const double hd = support_D(xi, T);
            CHECK(std::abs(hd - T * homega) <= 1e-8 * std::max(hd, 1e-30));
        }
    }
}

TEST_CASE("support_D: homogeneity, subadditivity, monotonicity") {
    std::mt19937_64 rng(103);
    for (int rep = 0; rep < 15; ++rep) {
        const Momentum xi = testutil::random_momentum(rng, 5, false);
        const Momentum eta = testutil::random_momentum(rng, 5, false);
        const double T = testutil::uniform(rng, 1.0, 10.0);
        const double lam = testutil::uniform(rng, 0.0, 3.0);

        const double hd = support_D(xi, T);
        CHECK(support_D(testutil::scale_momentum(xi, lam), T) ==
              doctest::Approx(lam * hd).epsilon(1e-9));

        const double hsum = support_D(testutil::add_momenta(xi, eta), T);
        CHECK(hsum <= hd + support_D(eta, T) + 1e-9);

        CHECK(support_D(xi, 0.5 * T) <= hd + 1e-12);
    }
}

TEST_CASE("time-averaged support converges to the limit shape at rate 1/T") {
    std::mt19937_64 rng(104);
    for (int rep = 0; rep < 5; ++rep) {
        const Momentum xi = testutil::random_momentum(rng, 6, true);
        const double homega = support_Omega(xi);
        const double e10 = std::abs(support_D(xi, 10.0) / 10.0 - homega);
        const double e80 = std::abs(support_D(xi, 80.0) / 80.0 - homega);
        CHECK(e80 <= e10 * (10.0 / 80.0) * 4.0 + 1e-12);
    }
}

TEST_CASE("steepest_state: constant, cosine and sine momenta") {
    const std::size_t m = 256;
    const double T = 3.5;
    SUBCASE("zeta = 1: pure velocity T") {
        const GridState f = steepest_state(make_momentum({}, {1.0}), T, m);
        for (std::size_t j = 0; j < m; ++j) {
            CHECK(f.f1[j] == T);
            CHECK(f.f0[j] == 0.0);
        }
    }
    SUBCASE("zeta = cos: f1 = T sign(cos x), f0 = 0") {
        const GridState f = steepest_state(make_momentum({}, {0.0, 1.0}), T, m);
        for (std::size_t j = 0; j < m; ++j) {
            const double c = std::cos(f.f1.point(j));
            if (std::abs(c) > 1e-6) {
                CHECK(f.f1[j] == doctest::Approx(T * (c > 0 ? 1.0 : -1.0)).epsilon(1e-15));
            }
            CHECK(f.f0[j] == doctest::Approx(0.0).epsilon(1e-13));
        }
    }
    SUBCASE("zeta = sin: triangle-wave displacement, f1(0) = 0") {
        const GridState f = steepest_state(make_momentum({0.0, 1.0}, {}), T, m);
        CHECK(f.f1[0] == 0.0);
        const double h = f.f0.spacing();
        for (std::size_t j = 0; j < m; ++j) {
            const double x = f.f0.point(j);
            const double triangle = std::min(x, kTwoPi - x);
            CHECK(std::abs(f.f0[j] - (-T * triangle)) <= T * h);
        }
    }
    SUBCASE("zero momentum is degenerate") {
        CHECK_THROWS_AS(steepest_state(make_momentum({0.0}, {0.0}), T, m),
                        std::invalid_argument);
    }
}

TEST_CASE("steepest state attains the support value under the Lebesgue pairing") {
    std::mt19937_64 rng(105);
    const std::size_t m = 8192;
    for (int rep = 0; rep < 8; ++rep) {
        const Momentum xi = testutil::random_momentum(rng, 6, true);
        const double T = testutil::uniform(rng, 0.5, 4.0);
        const GridState f = steepest_state(xi, T, m);
        const EvenFourier a = cosine_analysis(f.f0, 8);
        const EvenFourier b = cosine_analysis(f.f1, 8);
        const double paired = pair_momentum_state(xi, a, b);
        // rho of the steepest state is 2 pi T, and <xi, f> = rho(f) * H_Omega.
        const double expected = kTwoPi * T * support_Omega(xi);
        CHECK(paired == doctest::Approx(expected).epsilon(5e-3));
    }
}

TEST_CASE("steepest state's profile has rho = 2 pi T") {
    std::mt19937_64 rng(106);
    const std::size_t m = 4096;
    for (int rep = 0; rep < 5; ++rep) {
        const Momentum xi = testutil::random_momentum(rng, 5, true);
        const double T = testutil::uniform(rng, 0.5, 4.0);
        const GridState f = steepest_state(xi, T, m);
        const CircleGrid g = traveling_wave_grid(f);
        CHECK(rho(g, Problem::stop_moving) == doctest::Approx(kTwoPi * T).epsilon(2e-2));
    }
}

TEST_CASE("dry_friction_control: sign table") {
    CircleGrid g = CircleGrid::zeros(4);
    g[0] = 3.0;
    CHECK(dry_friction_control(g) == -1.0);
    g[0] = -0.2;
    CHECK(dry_friction_control(g) == 1.0);
    g[0] = 0.0;
    CHECK(dry_friction_control(g) == 0.0);
}

TEST_CASE("feedback from the steepest state matches -sign zeta(0)") {
    std::mt19937_64 rng(107);
    const std::size_t m = 512;
    int used = 0;
    for (int rep = 0; rep < 40; ++rep) {
        const Momentum xi = testutil::random_momentum(rng, 6, true);
        const double z0 = zeta(xi, 0.0);
        if (std::abs(z0) < 1e-3) continue;
        ++used;
        const GridState f = steepest_state(xi, 2.0, m);
        const CircleGrid g = traveling_wave_grid(f);
        CHECK(dry_friction_control(g) == (z0 > 0 ? -1.0 : 1.0));
    }
    CHECK(used > 20);
}
