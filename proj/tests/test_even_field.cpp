#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "stringdamp/even_field.hpp"
#include "test_util.hpp"

using namespace stringdamp;

TEST_CASE("to_traveling_wave: zero and constant states") {
    StatePair zero;
    zero.f0 = EvenFourier({0.0});
    zero.f1 = EvenFourier({0.0});
    const CircleGrid g = to_traveling_wave(zero, 8);
    for (std::size_t j = 0; j < 8; ++j) CHECK(g[j] == 0.0);

    StatePair constant;
    constant.f0 = EvenFourier({0.0});
    constant.f1 = EvenFourier({2.5});
    const CircleGrid gc = to_traveling_wave(constant, 8);
    for (std::size_t j = 0; j < 8; ++j) CHECK(gc[j] == 2.5);
}

TEST_CASE("to_traveling_wave: derivative of cos x is -sin x") {
    StatePair f;
    f.f0 = EvenFourier({0.0, 1.0});
    f.f1 = EvenFourier({0.0});
    const std::size_t m = 64;
    const CircleGrid g = to_traveling_wave(f, m);
    for (std::size_t j = 0; j < m; ++j) {
        CHECK(g[j] == doctest::Approx(-std::sin(g.point(j))).epsilon(1e-14));
    }
}

TEST_CASE("to_traveling_wave: rejects a grid too coarse for the degree") {
    StatePair f;
    f.f0 = EvenFourier({0.0, 0.0, 0.0, 1.0});  // degree 3 -> need m >= 8
    f.f1 = EvenFourier({0.0});
    CHECK_THROWS_AS(to_traveling_wave(f, 6), std::invalid_argument);
    CHECK_NOTHROW(to_traveling_wave(f, 8));
}

TEST_CASE("to_traveling_wave is linear") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        auto coeffs = [&](std::size_t n) {
            std::vector<double> c(n);
            for (auto& x : c) x = testutil::uniform(rng, -2.0, 2.0);
            return c;
        };
        StatePair a{EvenFourier(coeffs(5)), EvenFourier(coeffs(5))};
        StatePair b{EvenFourier(coeffs(5)), EvenFourier(coeffs(5))};
        StatePair sum;
        sum.f0 = EvenFourier([&] {
            std::vector<double> c(5);
            for (std::size_t i = 0; i < 5; ++i) c[i] = a.f0.coeffs[i] + b.f0.coeffs[i];
            return c;
        }());
        sum.f1 = EvenFourier([&] {
            std::vector<double> c(5);
            for (std::size_t i = 0; i < 5; ++i) c[i] = a.f1.coeffs[i] + b.f1.coeffs[i];
            return c;
        }());
        const CircleGrid ga = to_traveling_wave(a, 16);
        const CircleGrid gb = to_traveling_wave(b, 16);
        const CircleGrid gs = to_traveling_wave(sum, 16);
        for (std::size_t j = 0; j < 16; ++j) {
            CHECK(gs[j] == doctest::Approx(ga[j] + gb[j]).epsilon(1e-13));
        }
    }
}

TEST_CASE("split_even_odd: pure parity inputs") {
    const std::size_t m = 32;
    CircleGrid c = CircleGrid::zeros(m);
    CircleGrid s = CircleGrid::zeros(m);
    CircleGrid mix = CircleGrid::zeros(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double x = c.point(j);
        c[j] = std::cos(x);
        s[j] = std::sin(x);
        mix[j] = 0.7 + std::sin(2.0 * x);
    }
    auto [ce, co] = split_even_odd(c);
    for (std::size_t j = 0; j < m; ++j) {
        CHECK(ce[j] == doctest::Approx(c[j]).epsilon(1e-15));
        CHECK(co[j] == doctest::Approx(0.0).epsilon(1e-15));
    }
    auto [se, so] = split_even_odd(s);
    for (std::size_t j = 0; j < m; ++j) {
        CHECK(se[j] == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(so[j] == doctest::Approx(s[j]).epsilon(1e-15));
    }
    // Direct check of the reflection formula on the mixed input.
    auto [me, mo] = split_even_odd(mix);
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t r = (m - j) % m;
        CHECK(me[j] == doctest::Approx(0.5 * (mix[j] + mix[r])).epsilon(1e-15));
        CHECK(mo[j] == doctest::Approx(0.5 * (mix[j] - mix[r])).epsilon(1e-14));
    }
}

TEST_CASE("split_even_odd: parity round trip is bit-identical on dyadic grids") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 200; ++rep) {
        const CircleGrid g = testutil::random_dyadic_grid(rng, 16, 8.0);
        auto [even, odd] = split_even_odd(g);
        for (std::size_t j = 0; j < g.m; ++j) {
            CHECK(even[j] + odd[j] == g[j]);
        }
    }
}

TEST_CASE("split_even_odd: round trip within one ulp on generic grids") {
    std::mt19937_64 rng(8);
    for (int rep = 0; rep < 200; ++rep) {
        const CircleGrid g = testutil::random_grid(rng, 16, 10.0);
        auto [even, odd] = split_even_odd(g);
        for (std::size_t j = 0; j < g.m; ++j) {
            const double back = even[j] + odd[j];
            CHECK(std::abs(back - g[j]) <=
                  std::ldexp(std::max(std::abs(g[j]), 1.0), -52));
        }
    }
}

TEST_CASE("reconstruct_state: examples") {
    const std::size_t m = 256;
    SUBCASE("zero") {
        const GridState f = reconstruct_state(CircleGrid::zeros(m));
        for (std::size_t j = 0; j < m; ++j) {
            CHECK(f.f0[j] == 0.0);
            CHECK(f.f1[j] == 0.0);
        }
    }
    SUBCASE("pure even input has no displacement") {
        CircleGrid g = CircleGrid::zeros(m);
        for (std::size_t j = 0; j < m; ++j) g[j] = std::cos(g.point(j));
        const GridState f = reconstruct_state(g);
        for (std::size_t j = 0; j < m; ++j) {
            CHECK(f.f0[j] == doctest::Approx(0.0).epsilon(1e-14));
            CHECK(f.f1[j] == doctest::Approx(std::cos(g.point(j))).epsilon(1e-14));
        }
    }
    SUBCASE("g = -sin x + cos x gives f0 = cos x - 1") {
        CircleGrid g = CircleGrid::zeros(m);
        for (std::size_t j = 0; j < m; ++j) {
            g[j] = -std::sin(g.point(j)) + std::cos(g.point(j));
        }
        const GridState f = reconstruct_state(g);
        CHECK(f.f0[0] == 0.0);
        const double tol = 10.0 / (static_cast<double>(m) * static_cast<double>(m));
        for (std::size_t j = 0; j < m; ++j) {
            const double x = g.point(j);
            CHECK(std::abs(f.f0[j] - (std::cos(x) - 1.0)) <= tol);
            CHECK(f.f1[j] == doctest::Approx(std::cos(x)).epsilon(1e-13));
        }
    }
}

TEST_CASE("round trip grid -> state -> traveling wave is second order") {
    std::mt19937_64 rng(21);
    const std::size_t coarse = 128;
    const std::size_t fine = 256;
    auto sup_err = [&](std::size_t m) {
        std::mt19937_64 local(99);
        const CircleGrid g = testutil::random_smooth_grid(local, m, 4, 1.0);
        const CircleGrid back = traveling_wave_grid(reconstruct_state(g));
        double e = 0.0;
        for (std::size_t j = 0; j < m; ++j) e = std::max(e, std::abs(back[j] - g[j]));
        return e;
    };
    (void)rng;
    const double e1 = sup_err(coarse);
    const double e2 = sup_err(fine);
    CHECK(e1 < 0.5);
    CHECK(e2 < e1 / 2.5);  // ~O(m^-2) refinement
}

TEST_CASE("rho: examples and exact constants") {
    const std::size_t m = 512;
    CHECK(rho(CircleGrid::zeros(m), Problem::stop_moving) == 0.0);
    CHECK(rho(CircleGrid::zeros(m), Problem::damping) == 0.0);

    const double c = 3.75;
    CHECK(rho(CircleGrid::constant(m, c), Problem::stop_moving) == kTwoPi * c);
    CHECK(rho(CircleGrid::constant(m, -c), Problem::stop_moving) == kTwoPi * c);
    CHECK(rho(CircleGrid::constant(m, c), Problem::damping) == 0.0);

    CircleGrid g = CircleGrid::zeros(m);
    for (std::size_t j = 0; j < m; ++j) g[j] = 5.0 * std::cos(g.point(j));
    CHECK(rho(g, Problem::stop_moving) == doctest::Approx(5.0 * kTwoPi).epsilon(1e-15));
    CHECK(rho(g, Problem::damping) == doctest::Approx(5.0 * kTwoPi).epsilon(1e-15));
}

TEST_CASE("rho: ordering, shift and reflection invariances") {
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 500; ++rep) {
        const CircleGrid g = testutil::random_grid(rng, 32, 5.0);
        const double stop = rho(g, Problem::stop_moving);
        const double damp = rho(g, Problem::damping);
        CHECK(damp <= stop + 1e-15);

        const double shift = testutil::uniform(rng, -3.0, 3.0);
        CircleGrid shifted = g;
        for (auto& x : shifted.values) x += shift;
        CHECK(rho(shifted, Problem::damping) == doctest::Approx(damp).epsilon(1e-12));

        CircleGrid reflected = g;
        for (std::size_t j = 0; j < g.m; ++j) reflected[j] = g[(g.m - j) % g.m];
        CHECK(rho(reflected, Problem::stop_moving) == stop);
        CHECK(rho(reflected, Problem::damping) == damp);
    }
}

TEST_CASE("cosine_analysis recovers band-limited coefficients") {
    const std::size_t m = 64;
    CircleGrid g = CircleGrid::zeros(m);
    for (std::size_t j = 0; j < m; ++j) g[j] = std::cos(2.0 * g.point(j));
    const EvenFourier c = cosine_analysis(g, 4);
    for (std::size_t n = 0; n <= 4; ++n) {
        CHECK(c.coeffs[n] == doctest::Approx(n == 2 ? 1.0 : 0.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(cosine_analysis(g, m / 2), std::invalid_argument);
}
