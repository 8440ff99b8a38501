#include "tcf/geometry.hpp"

#include <cmath>
#include <sstream>

#include "tcf/errors.hpp"

namespace tcf {

double WallProfile::value(double x1, double L) const {
    double v = mean;
    const double w = 2.0 * kPi / L;
    for (std::size_t k = 0; k < cos_c.size(); ++k)
        v += cos_c[k] * std::cos(w * double(k + 1) * x1);
    for (std::size_t k = 0; k < sin_c.size(); ++k)
        v += sin_c[k] * std::sin(w * double(k + 1) * x1);
    return v;
}

double WallProfile::deriv(double x1, double L) const {
    double v = 0.0;
    const double w = 2.0 * kPi / L;
    for (std::size_t k = 0; k < cos_c.size(); ++k) {
        const double wk = w * double(k + 1);
        v -= cos_c[k] * wk * std::sin(wk * x1);
    }
    for (std::size_t k = 0; k < sin_c.size(); ++k) {
        const double wk = w * double(k + 1);
        v += sin_c[k] * wk * std::cos(wk * x1);
    }
    return v;
}

int WallProfile::max_mode() const {
    int m = 0;
    for (std::size_t k = 0; k < cos_c.size(); ++k)
        if (cos_c[k] != 0.0) m = std::max(m, int(k + 1));
    for (std::size_t k = 0; k < sin_c.size(); ++k)
        if (sin_c[k] != 0.0) m = std::max(m, int(k + 1));
    return m;
}

bool WallProfile::is_flat() const { return max_mode() == 0; }

Grid build_grid(const ChannelGeometry& geom) {
    if (geom.L <= 0.0)
        throw ConfigError("period L must be positive, got " + std::to_string(geom.L));
    if (geom.Nq < 8 || geom.Ns < 8)
        throw ConfigError("grid too coarse: need Nq >= 8 and Ns >= 8, got Nq = " +
                          std::to_string(geom.Nq) + ", Ns = " + std::to_string(geom.Ns));
    if (geom.Nq % 2 != 0)
        throw ConfigError("Nq must be even, got " + std::to_string(geom.Nq));
    const int mmax = geom.h.max_mode();
    if (mmax > 0 && geom.Nq < 8 * mmax)
        throw ConfigError("Nq = " + std::to_string(geom.Nq) +
                          " under-resolves the wall profile: need Nq >= 8 x highest mode (" +
                          std::to_string(mmax) + ")");

    Grid g;
    g.Nq = geom.Nq;
    g.Ns = geom.Ns;
    g.L = geom.L;
    g.dq = geom.L / geom.Nq;
    g.ds = 1.0 / geom.Ns;
    g.h_const = geom.h.is_flat();

    // Positivity check on a 4x oversampled profile; also pins h_min/h_max.
    g.h_min = std::numeric_limits<double>::infinity();
    g.h_max = -std::numeric_limits<double>::infinity();
    const int nover = 4 * geom.Nq;
    for (int i = 0; i < nover; ++i) {
        const double x1 = geom.L * double(i) / double(nover);
        const double hv = geom.h.value(x1, geom.L);
        if (hv <= 0.0) {
            std::ostringstream os;
            os << "wall profile not positive: h(x1) = " << hv << " at x1 = " << x1;
            throw ConfigError(os.str());
        }
        g.h_min = std::min(g.h_min, hv);
        g.h_max = std::max(g.h_max, hv);
    }

    g.q = Vec::LinSpaced(g.Nq, 0.0, geom.L - g.dq);
    g.s = Vec::LinSpaced(g.Ns + 1, 0.0, 1.0);
    g.H.resize(g.Nq);
    g.Hp.resize(g.Nq);
    g.Hmid.resize(g.Nq);
    for (int i = 0; i < g.Nq; ++i) {
        g.H[i] = geom.h.value(g.q[i], geom.L);
        g.Hp[i] = geom.h.deriv(g.q[i], geom.L);
    }
    for (int i = 0; i < g.Nq; ++i) g.Hmid[i] = 0.5 * (g.H[i] + g.H[(i + 1) % g.Nq]);

    g.W.resize(g.Nq, g.Ns + 1);
    g.X2.resize(g.Nq, g.Ns + 1);
    for (int j = 0; j <= g.Ns; ++j) {
        const double wj = (j == 0 || j == g.Ns) ? 0.5 : 1.0;
        for (int i = 0; i < g.Nq; ++i) {
            g.W(i, j) = g.H[i] * g.dq * g.ds * wj;
            g.X2(i, j) = g.s[j] * g.H[i];
        }
    }
    return g;
}

double integrate_domain(const Grid& g, const Field& f) {
    if (f.rows() != g.Nq || f.cols() != g.Ns + 1)
        throw ConfigError("field shape " + std::to_string(f.rows()) + "x" +
                          std::to_string(f.cols()) + " does not match grid " +
                          std::to_string(g.Nq) + "x" + std::to_string(g.Ns + 1));
    return (g.W * f).sum();
}

double integrate_gamma0(const Grid& g, const Vec& trace) {
    if (trace.size() != g.Nq)
        throw ConfigError("bottom trace length " + std::to_string(trace.size()) +
                          " does not match Nq = " + std::to_string(g.Nq));
    return g.dq * trace.sum();
}

}  // namespace tcf
