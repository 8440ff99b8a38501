#include "tcf/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tcf/errors.hpp"

namespace tcf {

namespace {

bool near_integer(double x, long& n) {
    n = std::lround(x);
    return std::abs(x - double(n)) <= 1e-9 * std::max(1.0, std::abs(x));
}

double pair_norm_sq(const Grid& g, const State& a, const State& b) {
    const Field d1 = a.v1 - b.v1;
    const Field d2 = a.v2 - b.v2;
    return wdot(g, d1, d1) + wdot(g, d2, d2);
}

}  // namespace

TrajectorySegment::TrajectorySegment(const StoredRun& src, double t0, double l)
    : src_(&src), t0_(t0), l_(l) {
    if (!src.grid || src.states.empty())
        throw ConfigError("segment over an empty stored run");
    if (!(src.dt_sample > 0)) throw ConfigError("stored run has no sampling step");
    if (!(l > 0)) throw ConfigError("segment length must be positive");

    long steps = 0;
    if (!near_integer(l / src.dt_sample, steps) || steps < 1)
        throw ConfigError("window length " + std::to_string(l) +
                          " is not a multiple of the sampling step");
    long first = 0;
    if (!near_integer((t0 - src.t0) / src.dt_sample, first))
        throw ConfigError("window start " + std::to_string(t0) +
                          " does not sit on a stored sample");
    if (first < 0 || first + steps + 1 > long(src.states.size()))
        throw ConfigError("continuation not stored: window [" + std::to_string(t0) +
                          ", " + std::to_string(t0 + l) + "] leaves the run");
    first_ = int(first);
    count_ = int(steps + 1);
}

double xl_distance(const TrajectorySegment& a, const TrajectorySegment& b) {
    const Grid& g = a.grid();
    const bool same_shape = g.Nq == b.grid().Nq && g.Ns == b.grid().Ns &&
                            g.L == b.grid().L && a.count() == b.count() &&
                            std::abs(a.dt_sample() - b.dt_sample()) <=
                                1e-9 * a.dt_sample();
    if (!same_shape) throw ConfigError("mismatched sampling between segments");

    const double dt = a.dt_sample();
    double acc = 0;
    for (int k = 0; k < a.count(); ++k) {
        const double w = (k == 0 || k == a.count() - 1) ? 0.5 * dt : dt;
        acc += w * pair_norm_sq(g, a.state(k), b.state(k));
    }
    return std::sqrt(acc);
}

TrajectorySegment shift_segment(const TrajectorySegment& seg, double t) {
    return TrajectorySegment(seg.source(), seg.t0() + t, seg.l());
}

const State& endpoint(const TrajectorySegment& seg) {
    return seg.state(seg.count() - 1);
}

HolderFit holder_fit(const TrajectorySegment& seg, const std::vector<double>& shifts) {
    std::vector<TrajectorySegment> windows;
    windows.reserve(shifts.size());
    for (double t : shifts) windows.push_back(shift_segment(seg, t));

    // X_l norm of the base window, as the noise reference
    double base_sq = 0;
    for (int k = 0; k < seg.count(); ++k) {
        const double w =
            (k == 0 || k == seg.count() - 1) ? 0.5 * seg.dt_sample() : seg.dt_sample();
        const State& s = seg.state(k);
        base_sq += w * (wdot(seg.grid(), s.v1, s.v1) + wdot(seg.grid(), s.v2, s.v2));
    }
    const double floor = 1e-9 * (1.0 + std::sqrt(base_sq));

    std::vector<double> gaps, dists;
    long total_pairs = 0;
    double d_max = 0;
    for (std::size_t i = 0; i < windows.size(); ++i)
        for (std::size_t j = i + 1; j < windows.size(); ++j) {
            const double gap = std::abs(shifts[i] - shifts[j]);
            if (gap <= 0) continue;
            ++total_pairs;
            const double d = xl_distance(windows[i], windows[j]);
            d_max = std::max(d_max, d);
            if (d > floor) {
                gaps.push_back(gap);
                dists.push_back(d);
            }
        }
    if (total_pairs < 5)
        throw ConfigError("holder fit needs at least 5 shift pairs, got " +
                          std::to_string(total_pairs));

    HolderFit out;
    if (d_max <= floor) {  // constant trajectory: no decay to measure
        out.c = d_max;
        out.beta = 1;
        out.r2 = 1;
        out.degenerate = true;
        return out;
    }
    if (gaps.size() < 5)
        throw ConfigError("holder fit has only " + std::to_string(gaps.size()) +
                          " usable pairs above the noise floor");

    const std::size_t n = gaps.size();
    double mx = 0, my = 0;
    std::vector<double> x(n), y(n);
    for (std::size_t p = 0; p < n; ++p) {
        x[p] = std::log(gaps[p]);
        y[p] = std::log(dists[p]);
        mx += x[p] / double(n);
        my += y[p] / double(n);
    }
    double sxx = 0, sxy = 0;
    for (std::size_t p = 0; p < n; ++p) {
        sxx += (x[p] - mx) * (x[p] - mx);
        sxy += (x[p] - mx) * (y[p] - my);
    }
    if (sxx <= 0) throw ConfigError("holder fit needs distinct shift gaps");
    const double slope = sxy / sxx;
    const double icpt = my - slope * mx;

    double ss_res = 0, ss_tot = 0;
    for (std::size_t p = 0; p < n; ++p) {
        const double e = y[p] - (icpt + slope * x[p]);
        ss_res += e * e;
        ss_tot += (y[p] - my) * (y[p] - my);
    }
    out.beta = std::clamp(slope, 1e-3, 1.0);
    out.c = std::exp(icpt);
    out.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return out;
}

RegularitySeries time_regularity_monitor(const Operators& ops, const StoredRun& run,
                                         const FrictionModel& fm, double nu,
                                         double solver_dt, double eta) {
    const Grid& g = ops.grid();
    if (run.states.size() < 2)
        throw ConfigError("regularity monitor needs at least two snapshots");
    if (!(solver_dt > 0) || !(run.dt_sample > 0))
        throw ConfigError("regularity monitor needs positive time steps");
    if (run.dt_sample > 10.0 * solver_dt * (1.0 + 1e-12))
        throw ConfigError("snapshot cadence " + std::to_string(run.dt_sample) +
                          " too coarse for time differences (limit 10 dt = " +
                          std::to_string(10.0 * solver_dt) + ")");

    RegularitySeries out;
    const double ds = run.dt_sample;
    for (std::size_t k = 1; k < run.states.size(); ++k) {
        const State& cur = run.states[k];
        const State& old = run.states[k - 1];
        const double t = run.t0 + ds * double(k);
        const Field vt1 = (cur.v1 - old.v1) / ds;
        const Field vt2 = (cur.v2 - old.v2) / ds;
        const double vt_sq = wdot(g, vt1, vt1) + wdot(g, vt2, vt2);
        const double a = dirichlet_form(ops, cur, cur);
        const double j = j_delta(fm, cur.v1.col(0).matrix(), g);
        const double y = t * t * vt_sq + t * nu * a + 2.0 * t * j;
        out.t.push_back(t);
        out.y.push_back(y);
        if (t >= eta - 1e-12) out.sup_on_window = std::max(out.sup_on_window, y);
    }
    return out;
}

}  // namespace tcf
