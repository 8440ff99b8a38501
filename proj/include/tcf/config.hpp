#pragma once

#include <string>
#include <vector>

namespace tcf {

// Flat, line-oriented run configuration. Every field below has its file key
// next to it; parse_config fills defaults so a parsed value is complete and
// serialize_config writes every key back out in this order.
struct RunConfig {
    // geometry
    long Nq = 0;                // Nq (mandatory)
    long Ns = 0;                // Ns (mandatory)
    double L = 1.0;             // L
    double h_mean = 1.0;        // h.mean
    std::vector<double> h_cos;  // h.cos[k], k >= 1
    std::vector<double> h_sin;  // h.sin[k]

    // background wall drive
    double U0 = 0.0;     // U0
    double alpha = 1.0;  // alpha

    // friction
    double k = 0.0;           // k
    double delta = 1.0;       // delta
    double eps_floor = 1e-6;  // eps_floor

    // solver
    double nu = 0.0;            // nu (mandatory)
    double dt = 0.0;            // dt (0 = drive by cfl)
    double cfl = 0.0;           // cfl
    double proj_tol = 1e-10;    // proj_tol
    long proj_max_iter = 4000;  // proj_max_iter
    double picard_tol = 1e-10;  // picard_tol
    long picard_max = 50;       // picard_max
    double T_end = 1.0;         // T_end
    double snapshot_dt = 0.1;   // snapshot_dt
    double steady_tol = 0.0;    // steady_tol

    // initial condition
    std::string ic = "zero";  // ic: zero | sample
    double ic_scale = 1.0;    // ic.scale
    long ic_q_modes = 4;      // ic.q_modes
    long ic_s_modes = 4;      // ic.s_modes
    double ic_decay = 1.5;    // ic.decay
    long ic_index = 0;        // ic.index

    // analysis
    double l = 1.0;         // l: window length
    double dt_sample = 0.1; // dt_sample
    long ensemble = 50;     // ensemble
    long seed = -1;         // seed (-1 = unset; sampled operations demand >= 0)
    double burn_in = 0.0;   // burn_in
    long m = 8;             // m: projection rank

    // output
    std::string out_dir = "out";  // output.dir
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& cfg);

}  // namespace tcf
