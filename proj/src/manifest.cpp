#include "tcf/manifest.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tcf/errors.hpp"

namespace tcf {

const char* const kCodeVersion = "tcf 0.1.0";

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for checksumming");
    std::uint64_t h = 14695981039346656037ULL;
    char buf[1 << 16];
    while (in) {
        in.read(buf, sizeof buf);
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ULL;
        }
    }
    return h;
}

namespace {

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[std::size_t(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

void append_num(std::string& out, double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
}

}  // namespace

std::string checksum_hex(const std::string& bytes) { return hex64(fnv1a64(bytes)); }

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open '" + tmp + "' for writing");
        f.write(content.data(), std::streamsize(content.size()));
        if (!f) throw IoError("short write to '" + tmp + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot move '" + tmp + "' into place: " + ec.message());
}

std::string energy_csv_header() {
    return "t,h_norm_sq,v_norm_sq,l4_norm,j_value,energy_residual,slip_max,"
           "stress_max,comp_residual";
}

std::string energy_csv(const std::vector<EnergyRecord>& records) {
    std::string out = energy_csv_header();
    out += '\n';
    for (const EnergyRecord& r : records) {
        const double cols[] = {r.t,          r.h_norm_sq,       r.v_norm_sq,
                               r.l4_norm,    r.j_value,         r.energy_residual,
                               r.slip_max,   r.stress_max,      r.comp_residual};
        for (std::size_t c = 0; c < 9; ++c) {
            if (c) out += ',';
            append_num(out, cols[c]);
        }
        out += '\n';
    }
    return out;
}

ManifestEntry make_entry(const std::string& dir, const std::string& name) {
    const std::string path = dir + "/" + name;
    std::error_code ec;
    const auto size = std::filesystem::file_size(path, ec);
    if (ec) throw IoError("cannot stat '" + path + "': " + ec.message());
    ManifestEntry e;
    e.name = name;
    e.size = size;
    e.checksum = hex64(fnv1a64_file(path));
    return e;
}

void write_manifest(const std::string& dir, const RunManifest& man) {
    nlohmann::json j;
    j["code_version"] = man.code_version;
    j["config_hash"] = man.config_hash;
    j["config"] = man.config;
    j["started_at"] = man.started_at;
    j["finished_at"] = man.finished_at;
    auto& files = j["files"] = nlohmann::json::array();
    for (const ManifestEntry& e : man.files)
        files.push_back({{"name", e.name}, {"size", e.size}, {"checksum", e.checksum}});
    write_file_atomic(dir + "/manifest.json", j.dump(2) + "\n");
}

RunManifest read_manifest(const std::string& dir) {
    const std::string path = dir + "/manifest.json";
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("malformed manifest '" + path + "': " + e.what());
    }
    RunManifest man;
    try {
        man.code_version = j.at("code_version").get<std::string>();
        man.config_hash = j.at("config_hash").get<std::string>();
        man.config = j.at("config").get<std::string>();
        man.started_at = j.at("started_at").get<std::string>();
        man.finished_at = j.at("finished_at").get<std::string>();
        for (const auto& f : j.at("files")) {
            ManifestEntry e;
            e.name = f.at("name").get<std::string>();
            e.size = f.at("size").get<std::uint64_t>();
            e.checksum = f.at("checksum").get<std::string>();
            man.files.push_back(std::move(e));
        }
    } catch (const nlohmann::json::exception& e) {
        throw IoError("manifest '" + path + "' is missing fields: " + e.what());
    }
    return man;
}

void verify_manifest(const std::string& dir) {
    const RunManifest man = read_manifest(dir);
    if (hex64(fnv1a64(man.config)) != man.config_hash)
        throw IoError("config hash mismatch in '" + dir + "/manifest.json'");
    for (const ManifestEntry& e : man.files) {
        const std::string path = dir + "/" + e.name;
        std::error_code ec;
        const auto size = std::filesystem::file_size(path, ec);
        if (ec) throw IoError("inventoried file '" + e.name + "' is missing");
        if (size != e.size)
            throw IoError("size mismatch for '" + e.name + "': manifest says " +
                          std::to_string(e.size) + ", file has " +
                          std::to_string(size));
        if (hex64(fnv1a64_file(path)) != e.checksum)
            throw IoError("checksum mismatch for '" + e.name + "'");
    }
}

std::string now_utc_iso() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace tcf
