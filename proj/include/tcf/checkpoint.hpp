#pragma once

#include <cstdint>
#include <string>

#include "tcf/state.hpp"

namespace tcf {

// Binary snapshot of a state plus the physical parameters it was produced
// under. Layout: magic "TCF1", then little-endian version (u32), Nq, Ns
// (u64), L, t, nu, k, delta, eps_floor, U0, alpha (f64), then row-major f64
// arrays v1, v2, p, each Nq x (Ns+1).
struct CheckpointHeader {
    std::uint32_t version = 1;
    std::uint64_t Nq = 0, Ns = 0;
    double L = 0, t = 0, nu = 0, k = 0, delta = 0, eps_floor = 0, U0 = 0, alpha = 0;
};

void save_checkpoint(const std::string& path, const State& st,
                     const CheckpointHeader& hdr);

// Loads and validates framing (magic, version, exact payload size). The
// caller checks the header's dimensions against its own configuration.
State load_checkpoint(const std::string& path, CheckpointHeader& hdr);

// Convenience guard for the common mismatch.
void require_dims(const CheckpointHeader& hdr, long Nq, long Ns);

}  // namespace tcf
