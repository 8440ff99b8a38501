#pragma once

#include <cstdint>
#include <vector>

#include "tcf/background.hpp"
#include "tcf/friction.hpp"
#include "tcf/operators.hpp"
#include "tcf/projection.hpp"

namespace tcf {

struct NormTriple {
    double h_norm_sq = 0;  // |v|^2, weighted L2 over the channel
    double v_norm_sq = 0;  // ||v||^2, value of the Dirichlet form
    double l4_norm = 0;    // (integral of (v1^2+v2^2)^2)^(1/4)
};

NormTriple compute_norms(const Operators& ops, const State& st);

// One row of the energy log. energy_residual is filled by the run loop from
// the previous row (steady form on the first row); everything else is a
// function of the instantaneous state.
struct EnergyRecord {
    double t = 0;
    double h_norm_sq = 0;
    double v_norm_sq = 0;
    double l4_norm = 0;
    double j_value = 0;
    double energy_residual = 0;
    double slip_max = 0;
    double stress_max = 0;
    double comp_residual = 0;  // r_eq + r_bound of the wall complementarity
};

EnergyRecord make_record(const Operators& ops, const FrictionModel& fm,
                         double nu, const State& st);

// Discrete transcription of the energy inequality between two instants:
//   R = (|v|'^2 - |v|^2)/dt + nu (||v||'^2 + ||v||^2)/2 + (j' + j) - F.
// The continuum flow satisfies R <= 0; the discrete monitor tolerates
// R <= C (dt + dx^2).
double energy_residual(const EnergyRecord& prev, const EnergyRecord& next,
                       double dt, double nu, double F);

struct PoincareEstimate {
    double lambda1 = 0;
    State mode;  // unit weighted norm, divergence-free, boundary rows zero
    int iterations = 0;
};

// Smallest eigenvalue of the stiffness form on the divergence-free subspace
// (v1 pinned at the top only, v2 at both walls), by inverse power iteration
// with a projection after every solve.
PoincareEstimate estimate_poincare(const Operators& ops, const Projector& pr,
                                   double rel_tol = 1e-8, int max_iter = 500);

// Sampled supremum of ||v||_L4 / (|v|^(1/2) ||v||^(1/2)) over random
// admissible fields. Deterministic given the seed.
double estimate_ladyzhenskaya(const Operators& ops, const Projector& pr,
                              int n_samples, std::uint64_t seed);

// Sampled supremum of |<v2 U', v1>| / ||v||^2, the discrete counterpart of
// the background-shear absorption estimate.
double hopf_ratio_estimate(const Operators& ops, const Projector& pr,
                           const BackgroundFlow& bg, int n_samples,
                           std::uint64_t seed);

struct ConstantsEstimate {
    double lambda1 = 0;
    double c_lady = 0;
    double hopf_ratio = 0;
    double F = 0;
};

ConstantsEstimate estimate_constants(const Operators& ops, const Projector& pr,
                                     const BackgroundFlow& bg, int n_lady,
                                     int n_hopf, std::uint64_t seed);

struct AbsorbingReport {
    double worst_margin = 0;  // max over records of |v(t)|^2 - decay bound
    double entry_time = 0;    // first record time inside the ball, +inf if never
    double rho_sq = 0;        // squared ball radius 2F/(nu lambda1)
};

AbsorbingReport absorbing_check(const std::vector<EnergyRecord>& series,
                                double lambda1, double F, double nu);

// Gap between the pointwise background forcing paired with theta and the
// weak-form combination -nu a(xi,theta) - b(xi,v,theta) - b(v,xi,theta).
// Shrinks at second order under refinement.
double forcing_pairing_gap(const Operators& ops, const BackgroundFlow& bg,
                           double nu, const State& v, const State& theta);

}  // namespace tcf
