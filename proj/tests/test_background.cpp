#include <doctest.h>

#include <cmath>

#include "tcf/background.hpp"
#include "tcf/errors.hpp"
#include "tcf/geometry.hpp"

using namespace tcf;

namespace {

Grid flat_grid(int Nq, int Ns, double L = 1.0, double hmean = 1.0) {
    ChannelGeometry gm;
    gm.L = L;
    gm.h.mean = hmean;
    gm.Nq = Nq;
    gm.Ns = Ns;
    return build_grid(gm);
}

}  // namespace

TEST_CASE("bump profile endpoint constraints are exact") {
    CHECK(bump(0.0) == 1.0);
    CHECK(bump_d1(0.0) == 0.0);
    CHECK(bump_d2(0.0) == 0.0);
    CHECK(bump(1.0) == 0.0);
    CHECK(bump_d1(1.0) == 0.0);
    CHECK(bump_d2(1.0) == 0.0);
    CHECK(bump(2.0) == 0.0);
    // midpoint value by hand: 1 - 10/8 + 15/16 - 6/32 = 1/2
    CHECK(bump(0.5) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("zero wall speed gives a zero extension") {
    Grid g = flat_grid(8, 8);
    BackgroundFlow xi = build_background(0.0, 0.5, g, 0.1);
    CHECK(xi.U.abs().maxCoeff() == 0.0);
    CHECK(xi.forcing_bound_F == 0.0);
    CHECK(xi.h_norm_sq == 0.0);
}

TEST_CASE("wall constraints hold to machine precision at every resolution") {
    for (int Ns : {8, 16, 64}) {
        Grid g = flat_grid(8, Ns);
        BackgroundFlow xi = build_background(1.0, 0.5, g, 0.1);
        for (int i = 0; i < g.Nq; ++i) {
            CHECK(xi.U(i, 0) == 1.0);
            CHECK(xi.Uy(i, 0) == 0.0);
            CHECK(xi.U(i, g.Ns) == 0.0);
        }
    }
}

TEST_CASE("extension vanishes on levels beyond the layer") {
    Grid g = flat_grid(8, 16);
    BackgroundFlow xi = build_background(1.0, 0.5, g, 0.1);
    for (int j = 0; j <= g.Ns; ++j)
        if (g.X2(0, j) >= 0.5)
            for (int i = 0; i < g.Nq; ++i) {
                CHECK(xi.U(i, j) == 0.0);
                CHECK(xi.Uy(i, j) == 0.0);
                CHECK(xi.Uyy(i, j) == 0.0);
            }
    // quintic midpoint: U(0.25) = bump(0.5) = 0.5
    const int jq = g.Ns / 4;
    CHECK(g.X2(0, jq) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(xi.U(0, jq) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("background norms match the exact polynomial integrals") {
    // alpha = 1, h = 1, L = 1, U0 = 1:
    //   integral of bump(r)^2 over [0,1]   = 181/462
    //   integral of bump'(r)^2 over [0,1]  = 10/7
    const double i_phi2 = 181.0 / 462.0;
    const double i_dphi2 = 10.0 / 7.0;
    Grid g = flat_grid(8, 128);
    BackgroundFlow xi = build_background(1.0, 1.0, g, 0.1);
    CHECK(xi.h_norm_sq == doctest::Approx(i_phi2).epsilon(2e-4));
    CHECK(xi.v_norm_sq == doctest::Approx(i_dphi2).epsilon(2e-4));
    CHECK(xi.forcing_bound_F == doctest::Approx(2.0 * 0.1 * xi.v_norm_sq).epsilon(1e-15));
    CHECK(xi.lemma_sum == doctest::Approx(xi.h_norm_sq + xi.v_norm_sq).epsilon(1e-15));

    // the profile's endpoint slopes vanish, so trapezoid quadrature of its
    // square gains two extra orders: refinement should shrink the error 16x
    Grid g2 = flat_grid(8, 256);
    BackgroundFlow xi2 = build_background(1.0, 1.0, g2, 0.1);
    const double e1 = std::abs(xi.h_norm_sq - i_phi2);
    const double e2 = std::abs(xi2.h_norm_sq - i_phi2);
    CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.2));
}

TEST_CASE("doubling the wall speed quadruples the norms") {
    Grid g = flat_grid(8, 32);
    BackgroundFlow a = build_background(1.0, 0.5, g, 0.2);
    BackgroundFlow b = build_background(2.0, 0.5, g, 0.2);
    CHECK(b.h_norm_sq == doctest::Approx(4.0 * a.h_norm_sq).epsilon(1e-13));
    CHECK(b.v_norm_sq == doctest::Approx(4.0 * a.v_norm_sq).epsilon(1e-13));
    CHECK(b.forcing_bound_F == doctest::Approx(4.0 * a.forcing_bound_F).epsilon(1e-13));
}

TEST_CASE("under-resolved layer is rejected") {
    Grid g = flat_grid(8, 8);  // ds = 1/8, need alpha >= 3/8
    CHECK_THROWS_WITH_AS(build_background(1.0, 0.2, g, 0.1) /*alpha too small*/,
                         doctest::Contains("background layer under-resolved"),
                         ConfigError);
    CHECK_NOTHROW(build_background(1.0, 0.5, g, 0.1));
    CHECK_THROWS_AS(build_background(1.0, 1.5, g, 0.1), ConfigError);
    CHECK_THROWS_AS(build_background(1.0, 0.5, g, -0.1), ConfigError);
}
