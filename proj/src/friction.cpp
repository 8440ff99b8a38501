#include "tcf/friction.hpp"

#include <cmath>
#include <string>

#include "tcf/errors.hpp"

namespace tcf {

void FrictionModel::validate() const {
    if (k < 0.0) throw ConfigError("friction bound k must be >= 0, got " + std::to_string(k));
    if (!(delta > 0.0 && delta <= 1.0))
        throw ConfigError("delta must lie in (0, 1], got " + std::to_string(delta));
    if (!(eps_floor > 0.0))
        throw ConfigError("eps_floor must be positive, got " + std::to_string(eps_floor));
}

double FrictionModel::g(double w) const {
    return k * std::pow(w * w + eps_floor * eps_floor, 0.5 * (delta - 1.0)) * w;
}

double FrictionModel::gp(double w) const {
    const double m2 = w * w + eps_floor * eps_floor;
    return k * std::pow(m2, 0.5 * (delta - 1.0)) *
           (1.0 + (delta - 1.0) * w * w / m2);
}

double j_exact(const FrictionModel& fm, const WallTrace& trace, const Grid& grid) {
    return fm.k * integrate_gamma0(grid, trace.cwiseAbs());
}

double j_delta(const FrictionModel& fm, const WallTrace& trace, const Grid& grid) {
    Vec p = trace.cwiseAbs().array().pow(1.0 + fm.delta).matrix();
    return fm.k / (1.0 + fm.delta) * integrate_gamma0(grid, p);
}

WallTrace j_delta_prime(const FrictionModel& fm, const WallTrace& trace) {
    WallTrace out(trace.size());
    for (Eigen::Index i = 0; i < trace.size(); ++i) out[i] = fm.g(trace[i]);
    return out;
}

WallTrace tangential_stress(const State& st, const Grid& grid, double nu) {
    if (grid.Ns < 3)
        throw ConfigError("tangential_stress needs Ns >= 3 (one-sided stencil spans 3 layers)");
    WallTrace out(grid.Nq);
    const double c = nu / (2.0 * grid.ds);
    for (int i = 0; i < grid.Nq; ++i)
        out[i] = c / grid.H[i] *
                 (-3.0 * st.v1(i, 0) + 4.0 * st.v1(i, 1) - st.v1(i, 2));
    return out;
}

std::pair<double, double> complementarity_residual(const FrictionModel& fm,
                                                   const WallTrace& slip,
                                                   const WallTrace& stress,
                                                   const Grid& grid) {
    if (slip.size() != stress.size())
        throw ConfigError("slip and stress traces must have equal length");
    Vec eq = (fm.k * slip.cwiseAbs() + stress.cwiseProduct(slip)).cwiseAbs();
    const double r_eq = integrate_gamma0(grid, eq);
    const double r_bound = std::max(0.0, stress.cwiseAbs().maxCoeff() - fm.k);
    return {r_eq, r_bound};
}

}  // namespace tcf
