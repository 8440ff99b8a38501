#pragma once

#include <utility>

#include "tcf/geometry.hpp"
#include "tcf/scalar.hpp"
#include "tcf/state.hpp"

namespace tcf {

// Tresca friction data: bound k, penalty exponent delta, smoothing floor eps
// for the |w|^(delta-1) singularity at w = 0.
struct FrictionModel {
    double k = 0.0;
    double delta = 1.0;
    double eps_floor = 1e-6;

    void validate() const;

    // g(w) = k (w^2 + eps^2)^((delta-1)/2) w; odd, monotone, g(0) = 0.
    double g(double w) const;

    // g'(w); strictly positive (bounded below by delta * g(w)/w), so Newton
    // systems built on it are uniformly invertible.
    double gp(double w) const;
};

// j(u) = k * integral over the bottom wall of |u|.
double j_exact(const FrictionModel& fm, const WallTrace& trace, const Grid& grid);

// j_delta(u) = k/(1+delta) * integral of |u|^(1+delta).
double j_delta(const FrictionModel& fm, const WallTrace& trace, const Grid& grid);

// Pointwise derivative trace g(w_i).
WallTrace j_delta_prime(const FrictionModel& fm, const WallTrace& trace);

// One-sided second-order wall-normal derivative of the tangential velocity at
// s = 0, scaled by nu and the metric 1/h. Returns nu * dv1/dx2 at the wall; the
// traction the wall exerts on the fluid (through the outward normal (0,-1)) is
// the negative of this.
WallTrace tangential_stress(const State& st, const Grid& grid, double nu);

// r_eq  = integral over the wall of |k |slip| + stress . slip|
// r_bound = max(0, max_i |stress_i| - k)
// "stress" here is the traction acting on the fluid, so on the exact Tresca
// slip branch stress = -k sign(slip) and r_eq vanishes.
std::pair<double, double> complementarity_residual(const FrictionModel& fm,
                                                   const WallTrace& slip,
                                                   const WallTrace& stress,
                                                   const Grid& grid);

}  // namespace tcf
