#include <doctest.h>

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "tcf/config.hpp"
#include "tcf/errors.hpp"

using namespace tcf;

namespace {

std::string msg_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("a minimal config materializes every default") {
    const RunConfig c = parse_config("Nq = 16\nNs = 12\nnu = 0.1\n");
    CHECK(c.Nq == 16);
    CHECK(c.Ns == 12);
    CHECK(c.nu == 0.1);
    CHECK(c.L == 1.0);
    CHECK(c.h_mean == 1.0);
    CHECK(c.h_cos.empty());
    CHECK(c.delta == 1.0);
    CHECK(c.eps_floor == 1e-6);
    CHECK(c.T_end == 1.0);
    CHECK(c.snapshot_dt == 0.1);
    CHECK(c.ic == "zero");
    CHECK(c.seed == -1);
    CHECK(c.m == 8);
    CHECK(c.out_dir == "out");
}

TEST_CASE("comments, blank lines, and spacing are tolerated") {
    const RunConfig c = parse_config(
        "# channel setup\n"
        "\n"
        "  Nq   =  24   # nodes along the channel\n"
        "Ns=10\n"
        "\tnu = 2e-1\n"
        "h.cos[1] = 0.1\n"
        "h.sin[2] = -0.05\n");
    CHECK(c.Nq == 24);
    CHECK(c.Ns == 10);
    CHECK(c.nu == 0.2);
    REQUIRE(c.h_cos.size() == 1);
    CHECK(c.h_cos[0] == 0.1);
    REQUIRE(c.h_sin.size() == 2);
    CHECK(c.h_sin[0] == 0.0);
    CHECK(c.h_sin[1] == -0.05);
}

TEST_CASE("config errors name the offending line") {
    // unknown key
    std::string m = msg_of([] { parse_config("Nq = 16\nbogus = 3\nNs = 8\nnu = 1\n"); });
    CHECK(m.find("line 2") != std::string::npos);
    CHECK(m.find("bogus") != std::string::npos);

    // duplicate key
    m = msg_of([] { parse_config("Nq = 16\nNs = 8\nnu = 1\nNs = 10\n"); });
    CHECK(m.find("line 4") != std::string::npos);
    CHECK(m.find("duplicate") != std::string::npos);

    // type mismatch
    m = msg_of([] { parse_config("Nq = 16\nNs = eight\nnu = 1\n"); });
    CHECK(m.find("line 2") != std::string::npos);
    CHECK(m.find("eight") != std::string::npos);

    // missing '='
    m = msg_of([] { parse_config("Nq 16\n"); });
    CHECK(m.find("line 1") != std::string::npos);

    // missing mandatory key
    m = msg_of([] { parse_config("Nq = 16\nnu = 1\n"); });
    CHECK(m.find("Ns") != std::string::npos);

    // domain violations
    m = msg_of([] { parse_config("Nq = 16\nNs = 8\nnu = -1\n"); });
    CHECK(m.find("nu") != std::string::npos);
    CHECK(m.find("positive") != std::string::npos);
    CHECK_THROWS_AS(parse_config("Nq = 16\nNs = 8\nnu = 1\ndelta = 1.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("Nq = 16\nNs = 8\nnu = 1\nic = maybe\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("Nq = 16\nNs = 8\nnu = 1\nh.cos[0] = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("Nq = 16\nNs = 8\nnu = 1\nseed = -4\n"), ConfigError);
}

TEST_CASE("serialization round trips and is canonical") {
    RunConfig c;
    c.Nq = 48;
    c.Ns = 20;
    c.nu = 0.125;
    c.h_cos = {0.2, 0.0, -0.07};
    c.U0 = 1.5;
    c.alpha = 0.75;
    c.k = 0.05;
    c.delta = 0.1;
    c.seed = 1234;
    c.ic = "sample";
    c.out_dir = "runs/demo";

    const std::string text = serialize_config(c);
    const RunConfig back = parse_config(text);
    CHECK(serialize_config(back) == text);
    CHECK(back.h_cos == c.h_cos);
    CHECK(back.out_dir == c.out_dir);

    // interior zeros of wall arrays survive, trailing zeros are trimmed
    const RunConfig t =
        parse_config("Nq = 8\nNs = 6\nnu = 1\nh.cos[3] = 0\nh.cos[1] = 0.1\n");
    REQUIRE(t.h_cos.size() == 1);
    CHECK(t.h_cos[0] == 0.1);
}

TEST_CASE("random configs survive a serialize-parse-serialize loop") {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::uniform_int_distribution<int> grid(4, 96);
    std::uniform_int_distribution<int> modes(0, 3);

    for (int trial = 0; trial < 100; ++trial) {
        RunConfig c;
        c.Nq = grid(rng);
        c.Ns = grid(rng);
        c.L = 0.5 + 2.0 * uni(rng);
        c.h_mean = 0.8 + uni(rng);
        const int nc = modes(rng), ns = modes(rng);
        for (int i = 0; i < nc; ++i) c.h_cos.push_back(0.01 + 0.05 * uni(rng));
        for (int i = 0; i < ns; ++i) c.h_sin.push_back(0.01 + 0.05 * uni(rng));
        c.U0 = 3.0 * uni(rng);
        c.alpha = 0.2 + 0.8 * uni(rng);
        c.k = 0.5 * uni(rng);
        c.delta = 0.05 + 0.95 * uni(rng);
        c.eps_floor = std::pow(10.0, -8.0 + 4.0 * uni(rng));
        c.nu = std::pow(10.0, -3.0 + 3.0 * uni(rng));
        if (uni(rng) < 0.5)
            c.dt = std::pow(10.0, -4.0 + 2.0 * uni(rng));
        else
            c.cfl = 0.1 + 0.8 * uni(rng);
        c.proj_tol = std::pow(10.0, -12.0 + 3.0 * uni(rng));
        c.proj_max_iter = 100 + int(4000 * uni(rng));
        c.picard_tol = std::pow(10.0, -12.0 + 3.0 * uni(rng));
        c.picard_max = 1 + int(80 * uni(rng));
        c.T_end = 5.0 * uni(rng);
        c.snapshot_dt = 0.01 + uni(rng);
        c.steady_tol = uni(rng) < 0.3 ? 1e-8 : 0.0;
        c.ic = uni(rng) < 0.5 ? "zero" : "sample";
        c.ic_scale = 0.1 + uni(rng);
        c.ic_q_modes = 1 + int(6 * uni(rng));
        c.ic_s_modes = 1 + int(6 * uni(rng));
        c.ic_decay = 0.5 + 2.0 * uni(rng);
        c.ic_index = int(10 * uni(rng));
        c.l = 0.1 + 2.0 * uni(rng);
        c.dt_sample = 0.01 + 0.2 * uni(rng);
        c.ensemble = 50 + int(40 * uni(rng));
        c.seed = uni(rng) < 0.3 ? -1 : long(1e6 * uni(rng));
        c.burn_in = 2.0 * uni(rng);
        c.m = 2 + int(10 * uni(rng));
        c.out_dir = trial % 2 ? "out" : "runs/case";

        const std::string once = serialize_config(c);
        const std::string twice = serialize_config(parse_config(once));
        CHECK(once == twice);
    }
}
