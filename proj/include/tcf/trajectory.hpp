#pragma once

#include <vector>

#include "tcf/friction.hpp"
#include "tcf/operators.hpp"
#include "tcf/state.hpp"

namespace tcf {

// A completed run kept in memory: snapshots at a uniform cadence starting at
// t0. Segments below are windows into one of these; they never re-simulate.
struct StoredRun {
    const Grid* grid = nullptr;
    double t0 = 0;
    double dt_sample = 0;
    std::vector<State> states;

    double t_end() const {
        return t0 + dt_sample * double(states.empty() ? 0 : states.size() - 1);
    }
};

// Window of length l over a stored run, sampled at the run's cadence. Both
// endpoints must sit on stored sample times (to 1e-9 relative).
class TrajectorySegment {
public:
    TrajectorySegment(const StoredRun& src, double t0, double l);

    double l() const { return l_; }
    double dt_sample() const { return src_->dt_sample; }
    double t0() const { return t0_; }
    int count() const { return count_; }
    const State& state(int k) const { return src_->states[std::size_t(first_ + k)]; }
    const StoredRun& source() const { return *src_; }
    const Grid& grid() const { return *src_->grid; }

private:
    const StoredRun* src_;
    double t0_, l_;
    int first_, count_;
};

// L^2-in-time distance of two equally sampled windows: the square root of the
// trapezoid rule applied to the weighted field distance at each sample.
double xl_distance(const TrajectorySegment& a, const TrajectorySegment& b);

// The window re-based at t0 + t over the same stored run.
TrajectorySegment shift_segment(const TrajectorySegment& seg, double t);

const State& endpoint(const TrajectorySegment& seg);

struct HolderFit {
    double c = 0;
    double beta = 1;
    double r2 = 1;
    bool degenerate = false;  // all pair distances at noise level
};

// Least-squares exponent of pairwise window distances against time gaps:
// log dist = log c + beta log |t_i - t_j| over all shift pairs. beta is
// clamped into (0, 1]; a flat (steady) trajectory is flagged instead of fit.
HolderFit holder_fit(const TrajectorySegment& seg, const std::vector<double>& shifts);

struct RegularitySeries {
    std::vector<double> t;
    std::vector<double> y;
    double sup_on_window = 0;  // running max over t >= eta
};

// Weighted smoothing monitor y(t) = t^2 |dv/dt|^2 + t nu ||v||^2 + 2 t j(v)
// with dv/dt by backward differences of the stored snapshots. The cadence
// must not exceed ten solver steps or the difference quotient is meaningless.
RegularitySeries time_regularity_monitor(const Operators& ops, const StoredRun& run,
                                         const FrictionModel& fm, double nu,
                                         double solver_dt, double eta);

}  // namespace tcf
