#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "tcf/errors.hpp"
#include "tcf/sampling.hpp"
#include "tcf/solver.hpp"
#include "tcf/trajectory.hpp"

using namespace tcf;

namespace {

Grid flat_grid(int Nq, int Ns, double L = 1.0) {
    ChannelGeometry gm;
    gm.L = L;
    gm.Nq = Nq;
    gm.Ns = Ns;
    return build_grid(gm);
}

State noise_state(const Grid& g, std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> gauss;
    State st = State::zero(g.Nq, g.Ns);
    for (int i = 0; i < g.Nq; ++i)
        for (int j = 0; j <= g.Ns; ++j) {
            st.v1(i, j) = scale * gauss(rng);
            st.v2(i, j) = scale * gauss(rng);
        }
    return st;
}

StoredRun noise_run(const Grid& g, int n, double dt, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    StoredRun run;
    run.grid = &g;
    run.dt_sample = dt;
    for (int k = 0; k < n; ++k) {
        State st = noise_state(g, rng);
        st.t = dt * k;
        run.states.push_back(std::move(st));
    }
    return run;
}

}  // namespace

TEST_CASE("window distance vanishes on itself and sees constant offsets exactly") {
    Grid g = flat_grid(16, 8);
    StoredRun run = noise_run(g, 6, 0.2, 42);

    StoredRun offset = run;
    const double c = 0.3;
    for (State& st : offset.states) st.v1 += c;

    TrajectorySegment a(run, 0.0, 1.0);
    TrajectorySegment b(offset, 0.0, 1.0);
    CHECK(xl_distance(a, a) == 0.0);
    // constant offsets integrate exactly under the trapezoid rule:
    // |c|_H sqrt(l) with |c|_H^2 = c^2 * domain area
    const double area = integrate_domain(g, Field::Ones(g.Nq, g.Ns + 1));
    CHECK(xl_distance(a, b) ==
          doctest::Approx(c * std::sqrt(area) * std::sqrt(1.0)).epsilon(1e-12));
    CHECK(xl_distance(a, b) == xl_distance(b, a));
}

TEST_CASE("window distance is a metric on sampled data") {
    Grid g = flat_grid(12, 8);
    for (std::uint64_t trial = 0; trial < 6; ++trial) {
        StoredRun ra = noise_run(g, 5, 0.1, 100 + trial);
        StoredRun rb = noise_run(g, 5, 0.1, 200 + trial);
        StoredRun rc = noise_run(g, 5, 0.1, 300 + trial);
        TrajectorySegment a(ra, 0.0, 0.4), b(rb, 0.0, 0.4), c(rc, 0.0, 0.4);
        const double ab = xl_distance(a, b);
        const double bc = xl_distance(b, c);
        const double ac = xl_distance(a, c);
        CHECK(ac <= ab + bc + 1e-12);
        CHECK(ab > 0.0);
    }
}

TEST_CASE("mismatched or misaligned windows are refused") {
    Grid g = flat_grid(12, 8);
    Grid g2 = flat_grid(16, 8);
    StoredRun run = noise_run(g, 11, 0.1, 7);
    StoredRun coarse = noise_run(g, 11, 0.2, 7);
    StoredRun other = noise_run(g2, 11, 0.1, 7);

    TrajectorySegment a(run, 0.0, 0.5);
    CHECK_THROWS_AS(xl_distance(a, TrajectorySegment(coarse, 0.0, 1.0)), ConfigError);
    CHECK_THROWS_AS(xl_distance(a, TrajectorySegment(run, 0.0, 0.8)), ConfigError);
    CHECK_THROWS_AS(xl_distance(a, TrajectorySegment(other, 0.0, 0.5)), ConfigError);

    CHECK_THROWS_AS(TrajectorySegment(run, 0.0, 0.55), ConfigError);   // not a multiple
    CHECK_THROWS_AS(TrajectorySegment(run, 0.03, 0.5), ConfigError);   // off-sample start
    try {
        TrajectorySegment(run, 0.8, 0.5);  // needs data past t = 1.0
        CHECK(false);
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("continuation not stored") !=
              std::string::npos);
    }
}

TEST_CASE("shifts act as an exact semigroup of window moves") {
    Grid g = flat_grid(12, 8);
    StoredRun run = noise_run(g, 41, 0.1, 99);  // covers [0, 4]

    TrajectorySegment base(run, 0.5, 1.0);
    TrajectorySegment same = shift_segment(base, 0.0);
    CHECK(same.t0() == base.t0());
    CHECK(xl_distance(base, same) == 0.0);

    TrajectorySegment two_hops = shift_segment(shift_segment(base, 0.7), 0.3);
    TrajectorySegment one_hop = shift_segment(base, 1.0);
    CHECK(two_hops.t0() == doctest::Approx(one_hop.t0()).epsilon(1e-14));
    CHECK(xl_distance(two_hops, one_hop) == 0.0);

    // the endpoint of a shifted window is the stored state at t0 + t + l
    const State& e = endpoint(shift_segment(base, 0.8));
    CHECK(&e == &run.states[23]);  // (0.5 + 0.8 + 1.0) / 0.1

    CHECK_THROWS_AS(shift_segment(base, 3.0), ConfigError);
}

TEST_CASE("linear drift fits a first-order Holder exponent") {
    Grid g = flat_grid(12, 8);
    std::mt19937_64 rng(5);
    const State w = noise_state(g, rng);

    StoredRun run;
    run.grid = &g;
    run.dt_sample = 0.1;
    for (int k = 0; k <= 40; ++k) {
        State st = State::zero(g.Nq, g.Ns);
        const double t = 0.1 * k;
        st.v1 = t * w.v1;
        st.v2 = t * w.v2;
        st.t = t;
        run.states.push_back(std::move(st));
    }

    TrajectorySegment base(run, 0.0, 1.0);
    const HolderFit fit = holder_fit(base, {0.0, 0.2, 0.5, 0.9, 1.4, 2.0});
    CHECK(!fit.degenerate);
    CHECK(fit.beta == doctest::Approx(1.0).epsilon(1e-9));
    const double w_norm = std::sqrt(wdot(g, w.v1, w.v1) + wdot(g, w.v2, w.v2));
    CHECK(fit.c == doctest::Approx(w_norm * 1.0).epsilon(1e-9));
    CHECK(fit.r2 >= 1.0 - 1e-12);
}

TEST_CASE("a constant trajectory is flagged as a degenerate fit") {
    Grid g = flat_grid(12, 8);
    std::mt19937_64 rng(8);
    const State fixed = noise_state(g, rng);

    StoredRun run;
    run.grid = &g;
    run.dt_sample = 0.1;
    for (int k = 0; k <= 40; ++k) {
        State st = fixed;
        st.t = 0.1 * k;
        run.states.push_back(std::move(st));
    }
    const HolderFit fit =
        holder_fit(TrajectorySegment(run, 0.0, 1.0), {0.0, 0.2, 0.5, 0.9, 1.4, 2.0});
    CHECK(fit.degenerate);
    CHECK(fit.beta == 1.0);
    CHECK(fit.r2 == 1.0);
}

TEST_CASE("too few shift pairs are refused") {
    Grid g = flat_grid(12, 8);
    StoredRun run = noise_run(g, 41, 0.1, 3);
    try {
        holder_fit(TrajectorySegment(run, 0.0, 1.0), {0.0, 0.5, 1.0});
        CHECK(false);
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("5") != std::string::npos);
    }
}

TEST_CASE("the smoothing monitor is linear in time on a steady run") {
    Grid g = flat_grid(16, 8);
    Operators op = make_operators(g);
    FrictionModel fm;
    fm.k = 0.05;
    fm.delta = 0.5;
    const double nu = 0.2;

    std::mt19937_64 rng(12);
    State fixed = noise_state(g, rng, 0.5);
    fixed.v1.col(g.Ns).setZero();
    fixed.v2.col(0).setZero();
    fixed.v2.col(g.Ns).setZero();

    StoredRun run;
    run.grid = &g;
    run.dt_sample = 0.05;
    for (int k = 0; k <= 20; ++k) {
        State st = fixed;
        st.t = 0.05 * k;
        run.states.push_back(std::move(st));
    }

    const RegularitySeries series =
        time_regularity_monitor(op, run, fm, nu, 0.01, 0.3);
    const double a = dirichlet_form(op, fixed, fixed);
    const double j = j_delta(fm, fixed.v1.col(0).matrix(), g);
    REQUIRE(series.t.size() == 20);
    for (std::size_t i = 0; i < series.t.size(); ++i)
        CHECK(series.y[i] ==
              doctest::Approx(series.t[i] * (nu * a + 2.0 * j)).epsilon(1e-12));
    CHECK(series.sup_on_window ==
          doctest::Approx(1.0 * (nu * a + 2.0 * j)).epsilon(1e-12));

    // too coarse a cadence cannot resolve the difference quotient
    CHECK_THROWS_AS(time_regularity_monitor(op, run, fm, nu, 0.004, 0.3),
                    ConfigError);

    StoredRun quiet;
    quiet.grid = &g;
    quiet.dt_sample = 0.05;
    for (int k = 0; k <= 4; ++k) {
        State st = State::zero(g.Nq, g.Ns);
        st.t = 0.05 * k;
        quiet.states.push_back(std::move(st));
    }
    const RegularitySeries silence =
        time_regularity_monitor(op, quiet, fm, nu, 0.01, 0.0);
    for (double y : silence.y) CHECK(y == 0.0);
}

TEST_CASE("pair separation obeys the logged growth bound") {
    Grid g = flat_grid(24, 16);
    Operators op = make_operators(g);
    Projector pr(op, 1e-11, 6000);
    const double nu = 0.1;
    BackgroundFlow bg = build_background(1.0, 1.0, g, nu);
    FrictionModel fm;
    fm.k = 0.05;
    fm.delta = 0.5;  // mild exponent: the growth bound itself is exponent-free

    State v0 = sample_state(op, pr, 21, 0);
    v0.v1 *= 0.3;
    v0.v2 *= 0.3;
    State d = sample_state(op, pr, 21, 1);
    State w0 = v0;
    w0.v1 += 1e-4 * d.v1;
    w0.v2 += 1e-4 * d.v2;

    RunParams rp;
    rp.sp.nu = nu;
    rp.sp.dt = 2.5e-3;
    rp.T_end = 1.0;
    rp.snapshot_dt = 0.1;
    RunSummary sv = run_simulation(v0, op, pr, bg, fm, rp);
    RunSummary sw = run_simulation(w0, op, pr, bg, fm, rp);
    REQUIRE(sv.snapshots.size() == sw.snapshots.size());

    const double c = estimate_ladyzhenskaya(op, pr, 1000, 777);
    const double c4 = c * c * c * c;

    const auto sep_sq = [&](std::size_t i) {
        const Field d1 = sw.snapshots[i].v1 - sv.snapshots[i].v1;
        const Field d2 = sw.snapshots[i].v2 - sv.snapshots[i].v2;
        return wdot(g, d1, d1) + wdot(g, d2, d2);
    };

    const double base = sep_sq(0);
    CHECK(base > 0.0);
    double integral = 0;  // trapezoid of ||w||^2 along the perturbed run
    for (std::size_t i = 1; i < sw.records.size(); ++i) {
        const double dt = sw.records[i].t - sw.records[i - 1].t;
        integral +=
            0.5 * dt * (sw.records[i].v_norm_sq + sw.records[i - 1].v_norm_sq);
        const double bound = base * std::exp((2.0 / nu) * c4 * integral);
        CHECK(sep_sq(i) <= bound * (1.0 + 1e-9));
    }
}
