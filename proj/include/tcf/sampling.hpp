#pragma once

#include <cstdint>

#include "tcf/operators.hpp"
#include "tcf/projection.hpp"

namespace tcf {

// Low-mode random fields for the constant estimators and for initial
// conditions. The spectral coefficients are drawn from a generator seeded by
// seed + index alone, and the modes are analytic functions of (q, s), so the
// same (seed, index) names the same continuum field on every grid; only the
// final divergence-free projection sees the mesh.
struct SampleSpec {
    int q_modes = 4;      // trigonometric modes along the channel
    int s_modes = 4;      // cross-channel modes
    double decay = 1.5;   // spectral decay exponent of the coefficients
    bool normalize = true;  // scale to unit weighted norm after projection
};

State sample_state(const Operators& ops, const Projector& pr, std::uint64_t seed,
                   std::uint64_t index, const SampleSpec& spec = {});

}  // namespace tcf
