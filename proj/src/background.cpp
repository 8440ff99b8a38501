#include "tcf/background.hpp"

#include <cmath>
#include <string>

#include "tcf/errors.hpp"

namespace tcf {

double bump(double r) {
    if (r >= 1.0) return 0.0;
    return 1.0 + r * r * r * (-10.0 + r * (15.0 - 6.0 * r));
}

double bump_d1(double r) {
    if (r >= 1.0) return 0.0;
    return r * r * (-30.0 + r * (60.0 - 30.0 * r));
}

double bump_d2(double r) {
    if (r >= 1.0) return 0.0;
    return r * (-60.0 + r * (180.0 - 120.0 * r));
}

BackgroundFlow build_background(double U0, double alpha, const Grid& grid, double nu) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw ConfigError("alpha must lie in (0, 1], got " + std::to_string(alpha));
    if (!(nu > 0.0))
        throw ConfigError("nu must be positive, got " + std::to_string(nu));

    BackgroundFlow xi;
    xi.U0 = U0;
    xi.alpha = alpha;
    xi.layer = alpha * grid.h_min;

    // The layer must span at least 3 wall-normal spacings everywhere; the coarsest
    // spacing in x2 is ds * h_max.
    if (U0 != 0.0 && xi.layer < 3.0 * grid.ds * grid.h_max)
        throw ConfigError("background layer under-resolved: alpha*h_min = " +
                          std::to_string(xi.layer) + " spans fewer than 3 grid layers");

    const int Nq = grid.Nq, Ns = grid.Ns;
    xi.U.setZero(Nq, Ns + 1);
    xi.Uy.setZero(Nq, Ns + 1);
    xi.Uyy.setZero(Nq, Ns + 1);
    if (U0 != 0.0) {
        const double inv = 1.0 / xi.layer;
        for (int j = 0; j <= Ns; ++j)
            for (int i = 0; i < Nq; ++i) {
                const double r = grid.X2(i, j) * inv;
                xi.U(i, j) = U0 * bump(r);
                xi.Uy(i, j) = U0 * bump_d1(r) * inv;
                xi.Uyy(i, j) = U0 * bump_d2(r) * inv * inv;
            }
    }

    xi.h_norm_sq = integrate_domain(grid, xi.U * xi.U);
    xi.v_norm_sq = integrate_domain(grid, xi.Uy * xi.Uy);
    xi.forcing_bound_F = 2.0 * nu * xi.v_norm_sq;
    xi.lemma_sum = xi.h_norm_sq + xi.v_norm_sq;
    return xi;
}

BackgroundNorms background_norms(const BackgroundFlow& xi) {
    return {xi.h_norm_sq, xi.v_norm_sq, xi.forcing_bound_F};
}

}  // namespace tcf
