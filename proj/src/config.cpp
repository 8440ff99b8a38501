#include "tcf/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "tcf/errors.hpp"

namespace tcf {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

double parse_double(int line, const std::string& key, const std::string& v) {
    double out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
        fail(line, "key '" + key + "' expects a number, got '" + v + "'");
    return out;
}

long parse_long(int line, const std::string& key, const std::string& v) {
    long out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
        fail(line, "key '" + key + "' expects an integer, got '" + v + "'");
    return out;
}

// h.cos[k] or h.sin[k] with k >= 1
bool wall_coef_key(const std::string& key, bool& is_cos, long& idx) {
    const std::string c = "h.cos[", s = "h.sin[";
    const std::string* pre = nullptr;
    if (key.rfind(c, 0) == 0) pre = &c, is_cos = true;
    else if (key.rfind(s, 0) == 0) pre = &s, is_cos = false;
    else return false;
    if (key.back() != ']') return false;
    const std::string body = key.substr(pre->size(), key.size() - pre->size() - 1);
    if (body.empty()) return false;
    const auto res = std::from_chars(body.data(), body.data() + body.size(), idx);
    return res.ec == std::errc{} && res.ptr == body.data() + body.size();
}

void append_num(std::string& out, double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
}

void trim_trailing_zeros(std::vector<double>& v) {
    while (!v.empty() && v.back() == 0.0) v.pop_back();
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::map<std::string, int> where;  // key -> line, for validation messages
    std::set<std::string> mandatory_seen;

    std::map<std::string, std::function<void(int, const std::string&)>> sink;
    const auto dbl = [&](const std::string& key, double& ref) {
        sink[key] = [&ref, key](int ln, const std::string& v) {
            ref = parse_double(ln, key, v);
        };
    };
    const auto num = [&](const std::string& key, long& ref) {
        sink[key] = [&ref, key](int ln, const std::string& v) {
            ref = parse_long(ln, key, v);
        };
    };
    const auto str = [&](const std::string& key, std::string& ref) {
        sink[key] = [&ref](int, const std::string& v) { ref = v; };
    };

    num("Nq", cfg.Nq);
    num("Ns", cfg.Ns);
    dbl("L", cfg.L);
    dbl("h.mean", cfg.h_mean);
    dbl("U0", cfg.U0);
    dbl("alpha", cfg.alpha);
    dbl("k", cfg.k);
    dbl("delta", cfg.delta);
    dbl("eps_floor", cfg.eps_floor);
    dbl("nu", cfg.nu);
    dbl("dt", cfg.dt);
    dbl("cfl", cfg.cfl);
    dbl("proj_tol", cfg.proj_tol);
    num("proj_max_iter", cfg.proj_max_iter);
    dbl("picard_tol", cfg.picard_tol);
    num("picard_max", cfg.picard_max);
    dbl("T_end", cfg.T_end);
    dbl("snapshot_dt", cfg.snapshot_dt);
    dbl("steady_tol", cfg.steady_tol);
    str("ic", cfg.ic);
    dbl("ic.scale", cfg.ic_scale);
    num("ic.q_modes", cfg.ic_q_modes);
    num("ic.s_modes", cfg.ic_s_modes);
    dbl("ic.decay", cfg.ic_decay);
    num("ic.index", cfg.ic_index);
    dbl("l", cfg.l);
    dbl("dt_sample", cfg.dt_sample);
    num("ensemble", cfg.ensemble);
    num("seed", cfg.seed);
    dbl("burn_in", cfg.burn_in);
    num("m", cfg.m);
    str("output.dir", cfg.out_dir);

    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string stripped = trim(raw);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) fail(line, "expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) fail(line, "empty key");
        if (value.empty()) fail(line, "key '" + key + "' has no value");
        if (where.count(key)) fail(line, "duplicate key '" + key + "'");
        where[key] = line;

        bool is_cos = false;
        long idx = 0;
        if (wall_coef_key(key, is_cos, idx)) {
            if (idx < 1 || idx > 64)
                fail(line, "wall mode index in '" + key + "' must be in [1, 64]");
            auto& v = is_cos ? cfg.h_cos : cfg.h_sin;
            if (long(v.size()) < idx) v.resize(std::size_t(idx), 0.0);
            v[std::size_t(idx - 1)] = parse_double(line, key, value);
            continue;
        }
        const auto it = sink.find(key);
        if (it == sink.end()) fail(line, "unknown key '" + key + "'");
        it->second(line, value);
        if (key == "Nq" || key == "Ns" || key == "nu") mandatory_seen.insert(key);
    }

    for (const char* key : {"Nq", "Ns", "nu"})
        if (!mandatory_seen.count(key))
            throw ConfigError(std::string("missing mandatory key '") + key + "'");

    trim_trailing_zeros(cfg.h_cos);
    trim_trailing_zeros(cfg.h_sin);

    const auto bad = [&](const std::string& key, const std::string& rule) {
        const auto it = where.find(key);
        const std::string at =
            it == where.end() ? "" : "line " + std::to_string(it->second) + ": ";
        throw ConfigError(at + key + " " + rule);
    };
    if (cfg.Nq < 4) bad("Nq", "must be at least 4");
    if (cfg.Ns < 3) bad("Ns", "must be at least 3");
    if (!(cfg.L > 0)) bad("L", "must be positive");
    if (!(cfg.h_mean > 0)) bad("h.mean", "must be positive");
    if (!(cfg.alpha > 0) || cfg.alpha > 1) bad("alpha", "must lie in (0, 1]");
    if (cfg.k < 0) bad("k", "must be nonnegative");
    if (!(cfg.delta > 0) || cfg.delta > 1) bad("delta", "must lie in (0, 1]");
    if (!(cfg.eps_floor > 0)) bad("eps_floor", "must be positive");
    if (!(cfg.nu > 0)) bad("nu", "must be positive");
    if (cfg.dt < 0) bad("dt", "must be nonnegative");
    if (cfg.cfl < 0) bad("cfl", "must be nonnegative");
    if (!(cfg.proj_tol > 0)) bad("proj_tol", "must be positive");
    if (cfg.proj_max_iter < 1) bad("proj_max_iter", "must be at least 1");
    if (!(cfg.picard_tol > 0)) bad("picard_tol", "must be positive");
    if (cfg.picard_max < 1) bad("picard_max", "must be at least 1");
    if (cfg.T_end < 0) bad("T_end", "must be nonnegative");
    if (!(cfg.snapshot_dt > 0)) bad("snapshot_dt", "must be positive");
    if (cfg.steady_tol < 0) bad("steady_tol", "must be nonnegative");
    if (cfg.ic != "zero" && cfg.ic != "sample")
        bad("ic", "must be 'zero' or 'sample'");
    if (!std::isfinite(cfg.ic_scale)) bad("ic.scale", "must be finite");
    if (cfg.ic_q_modes < 0) bad("ic.q_modes", "must be nonnegative");
    if (cfg.ic_s_modes < 1) bad("ic.s_modes", "must be at least 1");
    if (cfg.ic_decay < 0) bad("ic.decay", "must be nonnegative");
    if (cfg.ic_index < 0) bad("ic.index", "must be nonnegative");
    if (!(cfg.l > 0)) bad("l", "must be positive");
    if (!(cfg.dt_sample > 0)) bad("dt_sample", "must be positive");
    if (cfg.ensemble < 1) bad("ensemble", "must be at least 1");
    if (cfg.seed < -1) bad("seed", "must be -1 (unset) or nonnegative");
    if (cfg.burn_in < 0) bad("burn_in", "must be nonnegative");
    if (cfg.m < 2) bad("m", "must be at least 2");
    if (cfg.out_dir.empty()) bad("output.dir", "must not be empty");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& cfg) {
    std::string out;
    const auto dbl = [&](const char* key, double v) {
        out += key;
        out += " = ";
        append_num(out, v);
        out += '\n';
    };
    const auto num = [&](const char* key, long v) {
        out += key;
        out += " = ";
        out += std::to_string(v);
        out += '\n';
    };
    const auto str = [&](const char* key, const std::string& v) {
        out += key;
        out += " = ";
        out += v;
        out += '\n';
    };

    num("Nq", cfg.Nq);
    num("Ns", cfg.Ns);
    dbl("L", cfg.L);
    dbl("h.mean", cfg.h_mean);
    for (std::size_t i = 0; i < cfg.h_cos.size(); ++i) {
        out += "h.cos[" + std::to_string(i + 1) + "] = ";
        append_num(out, cfg.h_cos[i]);
        out += '\n';
    }
    for (std::size_t i = 0; i < cfg.h_sin.size(); ++i) {
        out += "h.sin[" + std::to_string(i + 1) + "] = ";
        append_num(out, cfg.h_sin[i]);
        out += '\n';
    }
    dbl("U0", cfg.U0);
    dbl("alpha", cfg.alpha);
    dbl("k", cfg.k);
    dbl("delta", cfg.delta);
    dbl("eps_floor", cfg.eps_floor);
    dbl("nu", cfg.nu);
    dbl("dt", cfg.dt);
    dbl("cfl", cfg.cfl);
    dbl("proj_tol", cfg.proj_tol);
    num("proj_max_iter", cfg.proj_max_iter);
    dbl("picard_tol", cfg.picard_tol);
    num("picard_max", cfg.picard_max);
    dbl("T_end", cfg.T_end);
    dbl("snapshot_dt", cfg.snapshot_dt);
    dbl("steady_tol", cfg.steady_tol);
    str("ic", cfg.ic);
    dbl("ic.scale", cfg.ic_scale);
    num("ic.q_modes", cfg.ic_q_modes);
    num("ic.s_modes", cfg.ic_s_modes);
    dbl("ic.decay", cfg.ic_decay);
    num("ic.index", cfg.ic_index);
    dbl("l", cfg.l);
    dbl("dt_sample", cfg.dt_sample);
    num("ensemble", cfg.ensemble);
    num("seed", cfg.seed);
    dbl("burn_in", cfg.burn_in);
    num("m", cfg.m);
    str("output.dir", cfg.out_dir);
    return out;
}

}  // namespace tcf
