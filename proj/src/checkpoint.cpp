#include "tcf/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "tcf/errors.hpp"

namespace tcf {

namespace {

void put_u32(std::string& out, std::uint32_t v) {
    for (int b = 0; b < 4; ++b) out.push_back(char((v >> (8 * b)) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
    for (int b = 0; b < 8; ++b) out.push_back(char((v >> (8 * b)) & 0xff));
}

void put_f64(std::string& out, double v) {
    put_u64(out, std::bit_cast<std::uint64_t>(v));
}

struct Reader {
    const std::string& buf;
    std::size_t pos = 0;

    void need(std::size_t n) const {
        if (pos + n > buf.size()) throw IoError("truncated checkpoint file");
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int b = 0; b < 4; ++b)
            v |= std::uint32_t(std::uint8_t(buf[pos + std::size_t(b)])) << (8 * b);
        pos += 4;
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int b = 0; b < 8; ++b)
            v |= std::uint64_t(std::uint8_t(buf[pos + std::size_t(b)])) << (8 * b);
        pos += 8;
        return v;
    }
    double f64() { return std::bit_cast<double>(u64()); }
};

void write_field(std::string& out, const Field& f) {
    for (long i = 0; i < f.rows(); ++i)
        for (long j = 0; j < f.cols(); ++j) put_f64(out, f(i, j));
}

void read_field(Reader& r, Field& f) {
    for (long i = 0; i < f.rows(); ++i)
        for (long j = 0; j < f.cols(); ++j) f(i, j) = r.f64();
}

}  // namespace

void save_checkpoint(const std::string& path, const State& st,
                     const CheckpointHeader& hdr) {
    std::string out;
    const std::uint64_t nq = std::uint64_t(st.v1.rows());
    const std::uint64_t ns = std::uint64_t(st.v1.cols() - 1);
    out.reserve(4 + 4 + 2 * 8 + 9 * 8 + 3 * st.v1.size() * 8);
    out += "TCF1";
    put_u32(out, hdr.version);
    put_u64(out, nq);
    put_u64(out, ns);
    put_f64(out, hdr.L);
    put_f64(out, st.t);
    put_f64(out, hdr.nu);
    put_f64(out, hdr.k);
    put_f64(out, hdr.delta);
    put_f64(out, hdr.eps_floor);
    put_f64(out, hdr.U0);
    put_f64(out, hdr.alpha);
    write_field(out, st.v1);
    write_field(out, st.v2);
    write_field(out, st.p);

    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open '" + tmp + "' for writing");
        f.write(out.data(), std::streamsize(out.size()));
        if (!f) throw IoError("short write to '" + tmp + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot move '" + tmp + "' into place: " + ec.message());
}

State load_checkpoint(const std::string& path, CheckpointHeader& hdr) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open checkpoint '" + path + "'");
    std::string buf((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());

    if (buf.size() < 4 || buf.compare(0, 4, "TCF1") != 0)
        throw IoError("bad checkpoint magic in '" + path + "', expected TCF1");
    Reader r{buf, 4};
    hdr.version = r.u32();
    if (hdr.version != 1)
        throw IoError("unsupported checkpoint version " +
                      std::to_string(hdr.version) + ", expected 1");
    hdr.Nq = r.u64();
    hdr.Ns = r.u64();
    if (hdr.Nq < 1 || hdr.Ns < 1 || hdr.Nq > (1u << 20) || hdr.Ns > (1u << 20))
        throw IoError("implausible checkpoint dimensions");
    hdr.L = r.f64();
    hdr.t = r.f64();
    hdr.nu = r.f64();
    hdr.k = r.f64();
    hdr.delta = r.f64();
    hdr.eps_floor = r.f64();
    hdr.U0 = r.f64();
    hdr.alpha = r.f64();

    const std::size_t payload = std::size_t(hdr.Nq) * (std::size_t(hdr.Ns) + 1) * 8;
    if (buf.size() != r.pos + 3 * payload)
        throw IoError("truncated checkpoint file");

    State st = State::zero(int(hdr.Nq), int(hdr.Ns));
    st.t = hdr.t;
    read_field(r, st.v1);
    read_field(r, st.v2);
    read_field(r, st.p);
    return st;
}

void require_dims(const CheckpointHeader& hdr, long Nq, long Ns) {
    if (long(hdr.Nq) != Nq || long(hdr.Ns) != Ns)
        throw ConfigError("checkpoint dimensions " + std::to_string(hdr.Nq) + "x" +
                          std::to_string(hdr.Ns) + " do not match the configured " +
                          std::to_string(Nq) + "x" + std::to_string(Ns));
}

}  // namespace tcf
