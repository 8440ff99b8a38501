#include "tcf/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "tcf/errors.hpp"
#include "tcf/krylov.hpp"
#include "tcf/modal.hpp"
#include "tcf/sampling.hpp"

namespace tcf {

NormTriple compute_norms(const Operators& ops, const State& st) {
    const Grid& g = ops.grid();
    NormTriple out;
    out.h_norm_sq = wdot(g, st.v1, st.v1) + wdot(g, st.v2, st.v2);
    out.v_norm_sq = dirichlet_form(ops, st, st);
    Field mag = st.v1 * st.v1 + st.v2 * st.v2;
    out.l4_norm = std::pow(integrate_domain(g, mag * mag), 0.25);
    return out;
}

EnergyRecord make_record(const Operators& ops, const FrictionModel& fm,
                         double nu, const State& st) {
    const Grid& g = ops.grid();
    EnergyRecord rec;
    rec.t = st.t;
    const NormTriple nt = compute_norms(ops, st);
    rec.h_norm_sq = nt.h_norm_sq;
    rec.v_norm_sq = nt.v_norm_sq;
    rec.l4_norm = nt.l4_norm;

    const WallTrace slip = st.v1.col(0).matrix();
    const WallTrace stress = tangential_stress(st, g, nu);
    rec.j_value = j_delta(fm, slip, g);
    rec.slip_max = slip.cwiseAbs().maxCoeff();
    rec.stress_max = stress.cwiseAbs().maxCoeff();
    const auto [r_eq, r_bound] =
        complementarity_residual(fm, slip, (-stress).eval(), g);
    rec.comp_residual = r_eq + r_bound;
    return rec;
}

double energy_residual(const EnergyRecord& prev, const EnergyRecord& next,
                       double dt, double nu, double F) {
    if (!(dt > 0)) throw ConfigError("energy residual needs dt > 0");
    return (next.h_norm_sq - prev.h_norm_sq) / dt +
           nu * (next.v_norm_sq + prev.v_norm_sq) / 2 +
           (next.j_value + prev.j_value) - F;
}

PoincareEstimate estimate_poincare(const Operators& ops, const Projector& pr,
                                   double rel_tol, int max_iter) {
    const Grid& g = ops.grid();
    const int Ns = g.Ns;

    // stiffness with the constrained rows replaced by the identity; the
    // pinned values are zero, so this is the subspace operator
    const auto apply1 = [&ops, Ns](const Field& f) {
        Field out = apply_stiffness(ops, f);
        out.col(Ns) = f.col(Ns);
        return out;
    };
    const auto apply2 = [&ops, Ns](const Field& f) {
        Field out = apply_stiffness(ops, f);
        out.col(0) = f.col(0);
        out.col(Ns) = f.col(Ns);
        return out;
    };

    std::unique_ptr<ModalSolver> dir1, dir2;
    if (g.h_const) {
        dir1 = std::make_unique<ModalSolver>(apply1, Symbol::EdgeStiffness, g.Nq, Ns, false);
        dir2 = std::make_unique<ModalSolver>(apply2, Symbol::EdgeStiffness, g.Nq, Ns, false);
    }
    const int cg_cap = 80 * (g.Nq + Ns);
    const auto raw = [&ops](const Field& f) { return apply_stiffness(ops, f); };
    const auto solve1 = [&](const Field& rhs) {
        if (dir1) return dir1->solve(rhs);
        return cg_solve(raw, rhs, [Ns](Field& f) { f.col(Ns).setZero(); }, 1e-11,
                        cg_cap, "poincare estimate");
    };
    const auto solve2 = [&](const Field& rhs) {
        if (dir2) return dir2->solve(rhs);
        return cg_solve(raw, rhs,
                        [Ns](Field& f) {
                            f.col(0).setZero();
                            f.col(Ns).setZero();
                        },
                        1e-11, cg_cap, "poincare estimate");
    };

    // start near the cross-channel ground profile, slightly detuned along q
    State v = State::zero(g.Nq, Ns);
    for (int i = 0; i < g.Nq; ++i)
        for (int j = 0; j <= Ns; ++j)
            v.v1(i, j) = std::cos(0.5 * kPi * g.s[j]) *
                         (1.0 + 0.01 * std::cos(2.0 * kPi * g.q[i] / g.L));
    v.v1.col(Ns).setZero();
    pr.project(v.v1, v.v2);
    {
        const double n0 = std::sqrt(wdot(g, v.v1, v.v1) + wdot(g, v.v2, v.v2));
        if (!(n0 > 0)) throw NumericsError("poincare estimate: degenerate start vector");
        v.v1 /= n0;
        v.v2 /= n0;
    }

    double lam = dirichlet_form(ops, v, v);
    for (int it = 1; it <= max_iter; ++it) {
        Field rhs1 = g.W * v.v1;
        rhs1.col(Ns).setZero();
        Field rhs2 = g.W * v.v2;
        rhs2.col(0).setZero();
        rhs2.col(Ns).setZero();

        Field z1 = solve1(rhs1);
        Field z2 = solve2(rhs2);
        pr.project(z1, z2);
        const double n = std::sqrt(wdot(g, z1, z1) + wdot(g, z2, z2));
        if (!(n > 0)) throw NumericsError("poincare estimate: iterate collapsed to zero");
        v.v1 = z1 / n;
        v.v2 = z2 / n;

        const double lam_new = dirichlet_form(ops, v, v);
        if (std::abs(lam_new - lam) <= rel_tol * std::abs(lam_new))
            return {lam_new, std::move(v), it};
        lam = lam_new;
    }
    throw NumericsError("poincare estimate: no convergence in " +
                        std::to_string(max_iter) +
                        " iterations, last Rayleigh quotient " + std::to_string(lam));
}

double estimate_ladyzhenskaya(const Operators& ops, const Projector& pr,
                              int n_samples, std::uint64_t seed) {
    if (n_samples < 1000)
        throw ConfigError("ladyzhenskaya estimate needs n_samples >= 1000, got " +
                          std::to_string(n_samples));
    double best = 0;
    for (int i = 0; i < n_samples; ++i) {
        const State st = sample_state(ops, pr, seed, std::uint64_t(i));
        const NormTriple nt = compute_norms(ops, st);
        if (nt.h_norm_sq < 1e-20 || nt.v_norm_sq < 1e-20) continue;
        const double ratio = nt.l4_norm / (std::pow(nt.h_norm_sq, 0.25) *
                                           std::pow(nt.v_norm_sq, 0.25));
        best = std::max(best, ratio);
    }
    return best;
}

double hopf_ratio_estimate(const Operators& ops, const Projector& pr,
                           const BackgroundFlow& bg, int n_samples,
                           std::uint64_t seed) {
    if (n_samples < 1)
        throw ConfigError("hopf ratio estimate needs n_samples >= 1");
    double best = 0;
    for (int i = 0; i < n_samples; ++i) {
        const State st = sample_state(ops, pr, seed, std::uint64_t(i));
        const double den = dirichlet_form(ops, st, st);
        if (den < 1e-20) continue;
        best = std::max(best, std::abs(cross_term(ops, bg, st)) / den);
    }
    return best;
}

ConstantsEstimate estimate_constants(const Operators& ops, const Projector& pr,
                                     const BackgroundFlow& bg, int n_lady,
                                     int n_hopf, std::uint64_t seed) {
    ConstantsEstimate ce;
    ce.lambda1 = estimate_poincare(ops, pr).lambda1;
    ce.c_lady = estimate_ladyzhenskaya(ops, pr, n_lady, seed);
    ce.hopf_ratio = hopf_ratio_estimate(ops, pr, bg, n_hopf, seed + 1000003);
    ce.F = bg.forcing_bound_F;
    return ce;
}

AbsorbingReport absorbing_check(const std::vector<EnergyRecord>& series,
                                double lambda1, double F, double nu) {
    if (series.empty()) throw ConfigError("absorbing check needs a non-empty series");
    if (!(lambda1 > 0) || !(nu > 0) || !(F >= 0))
        throw ConfigError("absorbing check needs lambda1, nu > 0 and F >= 0");

    AbsorbingReport rep;
    const double level = F / (nu * lambda1);
    rep.rho_sq = 2 * level;
    rep.entry_time = std::numeric_limits<double>::infinity();
    rep.worst_margin = -std::numeric_limits<double>::infinity();

    const double h0 = series.front().h_norm_sq;
    const double t0 = series.front().t;
    for (const EnergyRecord& rec : series) {
        const double bound = h0 * std::exp(-nu * lambda1 * (rec.t - t0)) + level;
        rep.worst_margin = std::max(rep.worst_margin, rec.h_norm_sq - bound);
        if (std::isinf(rep.entry_time) && rec.h_norm_sq <= rep.rho_sq)
            rep.entry_time = rec.t;
    }
    return rep;
}

double forcing_pairing_gap(const Operators& ops, const BackgroundFlow& bg,
                           double nu, const State& v, const State& theta) {
    const Grid& g = ops.grid();
    Field f1 = Field::Zero(g.Nq, g.Ns + 1);
    Field f2 = Field::Zero(g.Nq, g.Ns + 1);
    add_forcing(ops, bg, nu, v, f1, f2);
    const double pointwise = wdot(g, f1, theta.v1) + wdot(g, f2, theta.v2);

    State xi = State::zero(g.Nq, g.Ns);
    xi.v1 = bg.U;
    const Field zero = Field::Zero(g.Nq, g.Ns + 1);
    const auto b_plain = [&](const Field& u1, const Field& u2, const State& a,
                             const State& b) {
        return wdot(g, advect(ops, u1, u2, a.v1), b.v1) +
               wdot(g, advect(ops, u1, u2, a.v2), b.v2);
    };
    const double weak = -nu * dirichlet_form(ops, xi, theta) -
                        b_plain(bg.U, zero, v, theta) -
                        b_plain(v.v1, v.v2, xi, theta);
    return std::abs(pointwise - weak);
}

}  // namespace tcf
