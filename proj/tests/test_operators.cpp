#include <doctest.h>

#include <cmath>
#include <random>

#include "tcf/errors.hpp"
#include "tcf/operators.hpp"

using namespace tcf;

namespace {

Grid flat_grid(int Nq, int Ns, double L = 1.0) {
    ChannelGeometry gm;
    gm.L = L;
    gm.Nq = Nq;
    gm.Ns = Ns;
    return build_grid(gm);
}

Grid wavy_grid(int Nq, int Ns, double amp = 0.15, double L = 1.0) {
    ChannelGeometry gm;
    gm.L = L;
    gm.Nq = Nq;
    gm.Ns = Ns;
    gm.h.cos_c = {amp};
    return build_grid(gm);
}

Field random_field(int Nq, int Ns, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Field f(Nq, Ns + 1);
    for (int i = 0; i < Nq; ++i)
        for (int j = 0; j <= Ns; ++j) f(i, j) = u(rng);
    return f;
}

}  // namespace

TEST_CASE("along-channel derivative reproduces the centered symbol") {
    Grid g = flat_grid(32, 8, 2.0);
    Operators op = make_operators(g);
    Field f(32, 9), expect(32, 9);
    const double kq = 2.0 * kPi / g.L;
    for (int i = 0; i < 32; ++i)
        for (int j = 0; j <= 8; ++j) {
            f(i, j) = std::sin(kq * g.q[i]);
            expect(i, j) = std::cos(kq * g.q[i]) * std::sin(kq * g.dq) / g.dq;
        }
    CHECK((dq_deriv(op, f) - expect).abs().maxCoeff() < 1e-14);
    // no cross-channel dependence: the physical derivative agrees
    CHECK((d1(op, f) - expect).abs().maxCoeff() < 1e-14);
}

TEST_CASE("cross-channel derivative is exact on quadratics up to the walls") {
    Grid g = flat_grid(8, 16);
    Operators op = make_operators(g);
    Field f(8, 17), expect(8, 17);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j <= 16; ++j) {
            const double s = g.s[j];
            f(i, j) = 2.0 - 3.0 * s + 0.5 * s * s;
            expect(i, j) = -3.0 + s;
        }
    CHECK((ds_deriv(op, f) - expect).abs().maxCoeff() < 1e-13);
}

TEST_CASE("metric part of the physical derivative") {
    // f = x2 = s h(q): d1 f = s (Dq h - h') picks up only the stencil error of h
    Grid g = wavy_grid(32, 8, 0.2);
    Operators op = make_operators(g);
    Field f(32, 9), expect(32, 9);
    const double kq = 2.0 * kPi / g.L;
    for (int i = 0; i < 32; ++i)
        for (int j = 0; j <= 8; ++j) {
            f(i, j) = g.s[j] * g.H[i];
            const double dq_h = -0.2 * std::sin(kq * g.q[i]) * std::sin(kq * g.dq) / g.dq;
            expect(i, j) = g.s[j] * (dq_h - g.Hp[i]);
        }
    CHECK((d1(op, f) - expect).abs().maxCoeff() < 1e-13);

    // d2 of x2^2 is exact: 2 x2
    Field f2 = f * f;
    Field expect2 = 2.0 * f;
    CHECK((d2(op, f2) - expect2).abs().maxCoeff() < 1e-12);
}

TEST_CASE("stiffness operator: symmetry, kernel, positivity") {
    for (bool wavy : {false, true}) {
        Grid g = wavy ? wavy_grid(16, 12) : flat_grid(16, 12);
        Operators op = make_operators(g);
        Field u = random_field(16, 12, 3), v = random_field(16, 12, 4);
        const double auv = dirichlet_form(op, u, v);
        const double avu = dirichlet_form(op, v, u);
        CHECK(auv == doctest::Approx(avu).epsilon(1e-12));
        CHECK(apply_stiffness(op, Field::Ones(16, 13)).abs().maxCoeff() < 1e-13);
        for (unsigned seed = 10; seed < 15; ++seed) {
            Field x = random_field(16, 12, seed);
            CHECK(dirichlet_form(op, x, x) >= -1e-10 * (x * x).sum());
        }
    }
}

TEST_CASE("dirichlet form approximates the gradient energy") {
    // v = sin(2 pi x1) sin(pi s) on the unit square: energy 5 pi^2 / 4
    Grid g = flat_grid(64, 64);
    Operators op = make_operators(g);
    Field v(64, 65);
    for (int i = 0; i < 64; ++i)
        for (int j = 0; j <= 64; ++j)
            v(i, j) = std::sin(2.0 * kPi * g.q[i]) * std::sin(kPi * g.s[j]);
    const double exact = 5.0 * kPi * kPi / 4.0;
    CHECK(dirichlet_form(op, v, v) == doctest::Approx(exact).epsilon(1e-2));

    // node-quadrature cross check on a wavy channel
    Grid gw = wavy_grid(32, 32);
    Operators ow = make_operators(gw);
    Field vw(32, 33);
    for (int i = 0; i < 32; ++i)
        for (int j = 0; j <= 32; ++j)
            vw(i, j) = std::sin(2.0 * kPi * gw.q[i]) * gw.s[j] * (1.0 - gw.s[j]);
    const double edge = dirichlet_form(ow, vw, vw);
    const double node = wdot(gw, d1(ow, vw), d1(ow, vw)) + wdot(gw, d2(ow, vw), d2(ow, vw));
    CHECK(edge == doctest::Approx(node).epsilon(0.05));
}

TEST_CASE("advection adjoint identity and exact skewness") {
    for (bool wavy : {false, true}) {
        Grid g = wavy ? wavy_grid(16, 12) : flat_grid(16, 12);
        Operators op = make_operators(g);
        Field u1 = random_field(16, 12, 21), u2 = random_field(16, 12, 22);
        Field v = random_field(16, 12, 23), w = random_field(16, 12, 24);
        const double lhs = wdot(g, advect(op, u1, u2, v), w);
        const double rhs = wdot(g, v, advect_adjoint(op, u1, u2, w));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        CHECK(std::abs(wdot(g, skew_advect(op, u1, u2, v), v)) < 1e-12 * (v * v).sum());
    }
}

TEST_CASE("trilinear form vanishes on repeated last arguments") {
    Grid g = wavy_grid(16, 12);
    Operators op = make_operators(g);
    State u = State::zero(16, 12), v = State::zero(16, 12);
    u.v1 = random_field(16, 12, 31);
    u.v2 = random_field(16, 12, 32);
    v.v1 = random_field(16, 12, 33);
    v.v2 = random_field(16, 12, 34);
    CHECK(std::abs(skew_form(op, u, v, v)) < 1e-11);
    // and is antisymmetric in the last two slots
    State w = State::zero(16, 12);
    w.v1 = random_field(16, 12, 35);
    w.v2 = random_field(16, 12, 36);
    CHECK(skew_form(op, u, v, w) == doctest::Approx(-skew_form(op, u, w, v)).epsilon(1e-11));
}

TEST_CASE("advection by unit streams reduces to single derivatives") {
    Grid g = flat_grid(16, 12);
    Operators op = make_operators(g);
    Field f = random_field(16, 12, 41);
    Field ones = Field::Ones(16, 13), zeros = Field::Zero(16, 13);
    CHECK((advect(op, ones, zeros, f) - d1(op, f)).abs().maxCoeff() < 1e-14);
    CHECK((advect(op, zeros, ones, f) - d2(op, f)).abs().maxCoeff() < 1e-14);
}

TEST_CASE("background forcing at rest reduces to the diffusive load") {
    Grid g = flat_grid(16, 16);
    Operators op = make_operators(g);
    BackgroundFlow bg = build_background(1.0, 0.8, g, 0.3);
    State v = State::zero(16, 16);
    Field f1 = Field::Zero(16, 17), f2 = Field::Zero(16, 17);
    add_forcing(op, bg, 0.3, v, f1, f2);
    CHECK((f1 - 0.3 * bg.Uyy).abs().maxCoeff() < 1e-15);
    CHECK(f2.abs().maxCoeff() == 0.0);
}

TEST_CASE("divergence is the exact negative adjoint of the masked gradient") {
    for (bool wavy : {false, true}) {
        Grid g = wavy ? wavy_grid(16, 12) : flat_grid(16, 12);
        Operators op = make_operators(g);
        Field phi = random_field(16, 12, 51);
        Field a1 = random_field(16, 12, 52), a2 = random_field(16, 12, 53);
        Field g1, g2;
        masked_gradient(op, phi, g1, g2);
        const double pair = wdot(g, g1, a1) + wdot(g, g2, a2);
        const double div_pair = wdot(g, phi, divergence(op, a1, a2));
        CHECK(pair + div_pair == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("pressure operator: symmetry, energy identity, kernel") {
    for (bool wavy : {false, true}) {
        Grid g = wavy ? wavy_grid(16, 12) : flat_grid(16, 12);
        Operators op = make_operators(g);
        Field phi = random_field(16, 12, 61), psi = random_field(16, 12, 62);
        const double a = (pressure_apply(op, phi) * psi).sum();
        const double b = (pressure_apply(op, psi) * phi).sum();
        CHECK(a == doctest::Approx(b).epsilon(1e-12));

        Field g1, g2;
        masked_gradient(op, phi, g1, g2);
        const double energy = wdot(g, g1, g1) + wdot(g, g2, g2);
        CHECK((pressure_apply(op, phi) * phi).sum() == doctest::Approx(energy).epsilon(1e-12));

        // the constant and the three checkerboards are annihilated
        Field n(16, 13);
        for (int pa = 0; pa < 2; ++pa)
            for (int pb = 0; pb < 2; ++pb) {
                for (int i = 0; i < 16; ++i)
                    for (int j = 0; j <= 12; ++j)
                        n(i, j) = (pa && i % 2 ? -1.0 : 1.0) * (pb && j % 2 ? -1.0 : 1.0);
                CHECK(pressure_apply(op, n).abs().maxCoeff() < 1e-12);
            }
    }
}

TEST_CASE("weighted dot rejects mismatched shapes") {
    Grid g = flat_grid(16, 8);
    CHECK_THROWS_AS(wdot(g, Field::Ones(16, 9), Field::Ones(8, 9)), ConfigError);
    CHECK_THROWS_AS(wdot(g, Field::Ones(16, 8), Field::Ones(16, 8)), ConfigError);
}
