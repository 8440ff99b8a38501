#pragma once

#include <vector>

#include "tcf/scalar.hpp"
#include "tcf/trajectory.hpp"

namespace tcf {

// Scaling analysis of a finite point cloud in R^m: hashed box counts over an
// epsilon ladder and the Grassberger-Procaccia correlation sum, each with a
// log-log slope fitted on its linear mid-range.
struct CloudReport {
    std::vector<double> eps;   // ladder, sorted descending
    std::vector<long> n_eps;   // cover counts, nondecreasing along the ladder
    double box_dim = 0;
    std::vector<double> corr_r;  // radii, ascending
    std::vector<double> corr_c;  // correlation sums, nondecreasing
    double corr_dim = 0;
};

// pts is one point per row. A cloud whose diameter sits at roundoff is
// reported as zero-dimensional; otherwise an empty fit window is an error.
CloudReport cloud_dimension(const Mat& pts, const std::vector<double>& eps_ladder);

struct DimensionReport {
    CloudReport cloud;
    int m = 0;                    // projection rank actually used
    double retained_variance = 1;  // energy fraction kept by the projection
    double attraction_rate = 0;    // filled by the caller when fitted
};

// Principal-component reduction of a segment ensemble (inner product = the
// window L^2 product) to rank m, followed by cloud_dimension on the
// coordinates.
DimensionReport dimension_estimate(const std::vector<TrajectorySegment>& segments,
                                   int m, const std::vector<double>& eps_ladder);

// Exponential rate fit: median distances d(t) to a reference set are modeled
// as d = d0 exp(-c1 t); returns c1 from least squares on log d.
double fit_attraction_rate(const std::vector<double>& t,
                           const std::vector<double>& median_dist);

}  // namespace tcf
