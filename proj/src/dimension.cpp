#include "tcf/dimension.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_set>

#include "tcf/errors.hpp"

namespace tcf {

namespace {

std::uint64_t mix_cell(std::uint64_t h, std::int64_t v) {
    // splitmix-style combiner over the integer cell coordinates
    std::uint64_t x = std::uint64_t(v) + 0x9e3779b97f4a7c15ULL + h;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct LineFit {
    double slope = 0, icpt = 0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i] / double(n);
        my += y[i] / double(n);
    }
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx <= 0) throw NumericsError("no scaling regime: degenerate fit window");
    return {sxy / sxx, my - sxy / sxx * mx};
}

}  // namespace

CloudReport cloud_dimension(const Mat& pts, const std::vector<double>& eps_ladder) {
    const long M = pts.rows();
    const long m = pts.cols();
    if (M < 2 || m < 1) throw ConfigError("cloud dimension needs at least 2 points");
    if (eps_ladder.empty()) throw ConfigError("cloud dimension needs an epsilon ladder");
    for (double e : eps_ladder)
        if (!(e > 0)) throw ConfigError("epsilon ladder entries must be positive");

    CloudReport rep;
    rep.eps = eps_ladder;
    std::sort(rep.eps.begin(), rep.eps.end(), std::greater<>());
    rep.eps.erase(std::unique(rep.eps.begin(), rep.eps.end()), rep.eps.end());

    std::vector<double> dist;
    dist.reserve(std::size_t(M) * std::size_t(M - 1) / 2);
    for (long i = 0; i < M; ++i)
        for (long j = i + 1; j < M; ++j)
            dist.push_back((pts.row(i) - pts.row(j)).norm());
    std::sort(dist.begin(), dist.end());
    const double diam = dist.back();

    rep.corr_r.assign(rep.eps.rbegin(), rep.eps.rend());
    if (diam <= 1e-12) {  // every point coincides: dimension zero by inspection
        rep.n_eps.assign(rep.eps.size(), 1);
        rep.corr_c.assign(rep.corr_r.size(), 1.0);
        rep.box_dim = 0;
        rep.corr_dim = 0;
        return rep;
    }

    for (double eps : rep.eps) {
        std::unordered_set<std::uint64_t> cells;
        cells.reserve(std::size_t(M) * 2);
        for (long i = 0; i < M; ++i) {
            std::uint64_t h = 1469598103934665603ULL;
            for (long c = 0; c < m; ++c)
                h = mix_cell(h, std::int64_t(std::floor(pts(i, c) / eps)));
            cells.insert(h);
        }
        long n = long(cells.size());
        // grid alignment can wiggle raw counts by a cell; keep the ladder monotone
        if (!rep.n_eps.empty()) n = std::max(n, rep.n_eps.back());
        rep.n_eps.push_back(n);
    }

    const long n_max = *std::max_element(rep.n_eps.begin(), rep.n_eps.end());
    if (n_max < 10) {
        rep.box_dim = 0;  // the set never outgrows a handful of cells
    } else {
        // fit between the coarse end (a handful of cells) and saturation
        std::vector<double> lx, ly;
        for (std::size_t i = 0; i < rep.eps.size(); ++i)
            if (rep.n_eps[i] >= 4 && rep.n_eps[i] <= std::max(10L, M / 2)) {
                lx.push_back(std::log(1.0 / rep.eps[i]));
                ly.push_back(std::log(double(rep.n_eps[i])));
            }
        if (lx.size() < 2)
            throw NumericsError("no scaling regime in the box counts");
        rep.box_dim = least_squares(lx, ly).slope;
    }

    const double n_pairs = double(dist.size());
    for (double r : rep.corr_r) {
        const auto it = std::upper_bound(dist.begin(), dist.end(), r);
        rep.corr_c.push_back(double(it - dist.begin()) / n_pairs);
    }
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < rep.corr_r.size(); ++i)
        if (rep.corr_c[i] >= 0.01 && rep.corr_c[i] <= 0.25) {
            lx.push_back(std::log(rep.corr_r[i]));
            ly.push_back(std::log(rep.corr_c[i]));
        }
    if (lx.size() < 2) {
        // saturated at every radius: the cloud is unresolved below the
        // ladder, which is dimension zero at the probed scales
        if (rep.corr_c.front() > 0.25) {
            rep.corr_dim = 0;
            return rep;
        }
        throw NumericsError("no scaling regime in the correlation sum");
    }
    rep.corr_dim = least_squares(lx, ly).slope;
    return rep;
}

DimensionReport dimension_estimate(const std::vector<TrajectorySegment>& segments,
                                   int m, const std::vector<double>& eps_ladder) {
    const long M = long(segments.size());
    if (M < 50)
        throw ConfigError("dimension estimate needs at least 50 segments, got " +
                          std::to_string(M));
    if (m < 2) throw ConfigError("projection rank must be at least 2");

    const Grid& g = segments.front().grid();
    const int K = segments.front().count();
    const double dts = segments.front().dt_sample();
    for (const auto& s : segments)
        if (s.count() != K || &s.grid() != &g ||
            std::abs(s.dt_sample() - dts) > 1e-9 * dts)
            throw ConfigError("mismatched sampling between segments");

    Mat G(M, M);
    for (long i = 0; i < M; ++i)
        for (long j = i; j < M; ++j) {
            double acc = 0;
            for (int k = 0; k < K; ++k) {
                const double w = (k == 0 || k == K - 1) ? 0.5 * dts : dts;
                const State& a = segments[std::size_t(i)].state(k);
                const State& b = segments[std::size_t(j)].state(k);
                acc += w * (wdot(g, a.v1, b.v1) + wdot(g, a.v2, b.v2));
            }
            G(i, j) = acc;
            G(j, i) = acc;
        }

    const Vec row_mean = G.rowwise().mean();
    const double all_mean = row_mean.mean();
    Mat Gc = G - row_mean.replicate(1, M) - row_mean.transpose().replicate(M, 1);
    Gc.array() += all_mean;

    Eigen::SelfAdjointEigenSolver<Mat> es(Gc);
    if (es.info() != Eigen::Success)
        throw NumericsError("segment covariance eigensolve failed");
    const Vec& lam = es.eigenvalues();  // ascending

    // centering a (near-)constant Gram matrix leaves ulp-level residue whose
    // square roots would smear a collapsed ensemble; floor against the
    // largest segment energy
    const double lam_floor = 1e-12 * std::max(G.diagonal().maxCoeff(), 0.0);
    const auto positive = [&](double l) { return l > lam_floor ? l : 0.0; };

    const int mm = int(std::min<long>(m, M));
    double kept = 0, total = 0;
    for (long c = 0; c < M; ++c) total += positive(lam[c]);
    Mat coords(M, mm);
    for (int c = 0; c < mm; ++c) {
        const double l = positive(lam[M - 1 - c]);
        kept += l;
        coords.col(c) = es.eigenvectors().col(M - 1 - c) * std::sqrt(l);
    }

    DimensionReport rep;
    rep.m = mm;
    rep.retained_variance = total > 0 ? kept / total : 1.0;
    rep.cloud = cloud_dimension(coords, eps_ladder);
    return rep;
}

double fit_attraction_rate(const std::vector<double>& t,
                           const std::vector<double>& median_dist) {
    if (t.size() != median_dist.size() || t.size() < 2)
        throw ConfigError("attraction rate fit needs matching series of length >= 2");
    std::vector<double> y;
    y.reserve(t.size());
    for (double d : median_dist) {
        if (!(d > 0))
            throw ConfigError("attraction rate fit needs positive distances");
        y.push_back(std::log(d));
    }
    return -least_squares(t, y).slope;
}

}  // namespace tcf
