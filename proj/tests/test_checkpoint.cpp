#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "tcf/checkpoint.hpp"
#include "tcf/errors.hpp"

using namespace tcf;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("tcf-ckpt-" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

State random_state(int Nq, int Ns, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    State st = State::zero(Nq, Ns);
    for (int i = 0; i < Nq; ++i)
        for (int j = 0; j <= Ns; ++j) {
            st.v1(i, j) = gauss(rng);
            st.v2(i, j) = gauss(rng);
            st.p(i, j) = gauss(rng);
        }
    st.t = 0.375;
    return st;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(bool(in));
    return std::string(std::istreambuf_iterator<char>(in), {});
}

void spit(const fs::path& p, const std::string& bytes) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), std::streamsize(bytes.size()));
}

}  // namespace

TEST_CASE("checkpoints round trip bit for bit") {
    TempDir tmp;
    const std::string file = (tmp.path / "state.tcf").string();

    const State st = random_state(12, 9, 77);
    CheckpointHeader hdr;
    hdr.Nq = 12;
    hdr.Ns = 9;
    hdr.L = 2.5;
    hdr.t = st.t;
    hdr.nu = 0.3;
    hdr.k = 0.07;
    hdr.delta = 0.25;
    hdr.eps_floor = 1e-7;
    hdr.U0 = 1.5;
    hdr.alpha = 0.6;
    save_checkpoint(file, st, hdr);

    CheckpointHeader back;
    const State re = load_checkpoint(file, back);
    CHECK(back.version == 1);
    CHECK(back.Nq == 12);
    CHECK(back.Ns == 9);
    CHECK(back.L == 2.5);
    CHECK(back.t == st.t);
    CHECK(back.nu == 0.3);
    CHECK(back.k == 0.07);
    CHECK(back.delta == 0.25);
    CHECK(back.eps_floor == 1e-7);
    CHECK(back.U0 == 1.5);
    CHECK(back.alpha == 0.6);
    CHECK(re.t == st.t);
    CHECK((re.v1 == st.v1).all());
    CHECK((re.v2 == st.v2).all());
    CHECK((re.p == st.p).all());

    // saving the same state twice produces identical bytes
    const std::string again = (tmp.path / "again.tcf").string();
    save_checkpoint(again, st, hdr);
    CHECK(slurp(file) == slurp(again));
}

TEST_CASE("framing damage is caught on load") {
    TempDir tmp;
    const std::string file = (tmp.path / "state.tcf").string();
    const State st = random_state(8, 5, 3);
    CheckpointHeader hdr;
    hdr.Nq = 8;
    hdr.Ns = 5;
    save_checkpoint(file, st, hdr);
    const std::string good = slurp(file);
    CheckpointHeader scratch;

    SUBCASE("wrong magic") {
        std::string bad = good;
        bad[0] = 'X';
        spit(file, bad);
        try {
            load_checkpoint(file, scratch);
            CHECK(false);
        } catch (const IoError& e) {
            CHECK(std::string(e.what()).find("TCF1") != std::string::npos);
        }
    }
    SUBCASE("unsupported version") {
        std::string bad = good;
        bad[4] = 2;  // little-endian version word
        spit(file, bad);
        try {
            load_checkpoint(file, scratch);
            CHECK(false);
        } catch (const IoError& e) {
            CHECK(std::string(e.what()).find("version") != std::string::npos);
        }
    }
    SUBCASE("truncated payload") {
        spit(file, good.substr(0, good.size() - 5));
        try {
            load_checkpoint(file, scratch);
            CHECK(false);
        } catch (const IoError& e) {
            CHECK(std::string(e.what()).find("truncated") != std::string::npos);
        }
    }
    SUBCASE("trailing garbage") {
        spit(file, good + "extra");
        CHECK_THROWS_AS(load_checkpoint(file, scratch), IoError);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_checkpoint((tmp.path / "nope.tcf").string(), scratch),
                        IoError);
    }
}

TEST_CASE("dimension guards name both sides") {
    CheckpointHeader hdr;
    hdr.Nq = 64;
    hdr.Ns = 48;
    CHECK_NOTHROW(require_dims(hdr, 64, 48));
    try {
        require_dims(hdr, 32, 48);
        CHECK(false);
    } catch (const ConfigError& e) {
        const std::string m = e.what();
        CHECK(m.find("64") != std::string::npos);
        CHECK(m.find("32") != std::string::npos);
    }
}
