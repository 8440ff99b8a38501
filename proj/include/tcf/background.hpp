#pragma once

#include "tcf/geometry.hpp"
#include "tcf/scalar.hpp"

namespace tcf {

// Quintic bump: phi(0)=1, phi'(0)=phi''(0)=0, phi(1)=phi'(1)=phi''(1)=0,
// identically zero for r >= 1.
double bump(double r);
double bump_d1(double r);
double bump_d2(double r);

// Smooth wall-velocity extension xi = U(x2) e1 with U(x2) = U0 bump(x2/(alpha h_min)).
// Supported in the layer 0 <= x2 <= alpha h_min, so it vanishes on the top wall for
// every x1. Immutable after construction.
struct BackgroundFlow {
    double U0 = 0.0;
    double alpha = 1.0;
    double layer = 0.0;  // alpha * h_min
    Field U;             // U(x2) at nodes
    Field Uy;            // dU/dx2
    Field Uyy;           // d2U/dx2^2
    double h_norm_sq = 0.0;   // |xi|^2  = integral of U^2
    double v_norm_sq = 0.0;   // ||xi||^2 = integral of (dU/dx2)^2
    double forcing_bound_F = 0.0;  // 2 nu ||xi||^2
    double lemma_sum = 0.0;        // |xi|^2 + ||xi||^2 (alternative bound convention)
};

BackgroundFlow build_background(double U0, double alpha, const Grid& grid, double nu);

// (|xi|^2, ||xi||^2, F)
struct BackgroundNorms {
    double h_norm_sq;
    double v_norm_sq;
    double F;
};
BackgroundNorms background_norms(const BackgroundFlow& xi);

}  // namespace tcf
