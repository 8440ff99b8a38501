#pragma once

#include <vector>

#include "tcf/scalar.hpp"

namespace tcf {

// Top wall profile h(x1) stored as a truncated trigonometric series:
//   h(x1) = mean + sum_k cos_c[k-1] cos(2 pi k x1 / L) + sin_c[k-1] sin(2 pi k x1 / L)
// Exact L-periodicity and exact derivatives come with the representation.
struct WallProfile {
    double mean = 1.0;
    std::vector<double> cos_c;
    std::vector<double> sin_c;

    double value(double x1, double L) const;
    double deriv(double x1, double L) const;
    int max_mode() const;
    bool is_flat() const;
};

struct ChannelGeometry {
    double L = 1.0;
    WallProfile h;
    int Nq = 0;  // periodic grid points in x1
    int Ns = 0;  // layers in s (nodes j = 0..Ns)
};

// Terrain-following grid for s = x2/h(x1) in [0,1]. Immutable after build.
struct Grid {
    int Nq = 0;
    int Ns = 0;
    double L = 0.0;
    double dq = 0.0;
    double ds = 0.0;
    Vec q;     // Nq values, q_i = i dq
    Vec s;     // Ns+1 values, s_j = j ds
    Vec H;     // h(q_i)
    Vec Hp;    // h'(q_i)
    Vec Hmid;  // h at q-edge midpoints, (H_i + H_{i+1})/2
    Field W;   // quadrature weights H_i dq ds (halved at j = 0, Ns)
    Field X2;  // physical x2 = s_j h(q_i)
    double h_min = 0.0;  // over a 4x oversampled profile
    double h_max = 0.0;
    bool h_const = false;

    double area() const { return W.sum(); }
};

Grid build_grid(const ChannelGeometry& geom);

// Trapezoid quadrature over the mapped domain; exact for fields constant per cell.
double integrate_domain(const Grid& g, const Field& f);

// Periodic trapezoid (= rectangle) rule over the flat bottom wall.
double integrate_gamma0(const Grid& g, const Vec& trace);

}  // namespace tcf
