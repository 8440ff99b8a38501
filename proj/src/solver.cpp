#include "tcf/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "tcf/errors.hpp"
#include "tcf/krylov.hpp"

namespace tcf {

void StepperParams::validate() const {
    if (!(nu > 0)) throw ConfigError("nu must be positive, got " + std::to_string(nu));
    if (!(dt > 0)) throw ConfigError("dt must be positive, got " + std::to_string(dt));
    if (cfl < 0) throw ConfigError("cfl must be >= 0, got " + std::to_string(cfl));
    if (!(proj_tol > 0)) throw ConfigError("proj_tol must be positive");
    if (proj_max_iter < 1) throw ConfigError("proj_max_iter must be >= 1");
    if (!(picard_tol > 0)) throw ConfigError("picard_tol must be positive");
    if (picard_max < 1) throw ConfigError("picard_max must be >= 1");
}

double derive_dt(const Operators& ops, const BackgroundFlow& bg, const State& st,
                 double cfl, double nu) {
    if (!(cfl > 0)) throw ConfigError("courant factor must be positive");
    const Grid& g = ops.grid();
    const double dx = std::min(g.dq, g.ds * g.h_min);
    const Field u1 = st.v1 + bg.U;
    const double umax = std::sqrt((u1 * u1 + st.v2 * st.v2).maxCoeff());
    double lim = std::numeric_limits<double>::infinity();
    if (umax > 0) lim = dx / umax;
    if (nu > 0) lim = std::min(lim, dx * dx / (4.0 * nu));
    if (!std::isfinite(lim))
        throw ConfigError("cannot derive a time step from a resting inviscid state");
    return cfl * lim;
}

Stepper::Stepper(const Operators& ops, const Projector& pr, const BackgroundFlow& bg,
                 const FrictionModel& fm, const StepperParams& prm)
    : ops_(&ops), pr_(&pr), bg_(&bg), fm_(fm), prm_(prm) {
    prm_.validate();
    fm_.validate();
    const Grid& g = ops.grid();
    const int Ns = g.Ns;

    load1_ = g.W * (prm_.nu * bg.Uyy);
    load1_.col(0) = prm_.nu * ops.cs.col(0) * (bg.U.col(1) - bg.U.col(0));
    load1_.col(Ns).setZero();

    if (g.h_const) {
        const double kap = 0.5 * prm_.nu * prm_.dt;
        const Operators* op = ops_;
        const auto op1 = [op, kap, Ns](const Field& f) {
            Field out = op->grid().W * f + kap * apply_stiffness(*op, f);
            out.col(Ns) = f.col(Ns);
            return out;
        };
        const auto op2 = [op, kap, Ns](const Field& f) {
            Field out = op->grid().W * f + kap * apply_stiffness(*op, f);
            out.col(0) = f.col(0);
            out.col(Ns) = f.col(Ns);
            return out;
        };
        mom1_ = std::make_unique<ModalSolver>(op1, Symbol::EdgeStiffness, g.Nq, Ns, false);
        mom2_ = std::make_unique<ModalSolver>(op2, Symbol::EdgeStiffness, g.Nq, Ns, false);

        if (fm_.k != 0.0) {
            // The tangential solve is translation invariant along the wall,
            // so its trace response to a point flux is one circulant column.
            Field e = Field::Zero(g.Nq, Ns + 1);
            e(0, 0) = prm_.dt * g.dq;
            const Field resp = mom1_->solve(e, 0.0);
            wallM_.resize(g.Nq, g.Nq);
            for (int j = 0; j < g.Nq; ++j)
                for (int i = 0; i < g.Nq; ++i)
                    wallM_(i, j) = resp((i - j + g.Nq) % g.Nq, 0);
        }
    }
}

void Stepper::reset_history() { have_history_ = false; }

void Stepper::seed_history(const State& prev) {
    advection_term(prev, e1_prev_, e2_prev_);
    have_history_ = true;
}

void Stepper::advection_term(const State& st, Field& e1, Field& e2) const {
    const Field u1 = st.v1 + bg_->U;
    e1 = -skew_advect(*ops_, u1, st.v2, st.v1) - st.v2 * bg_->Uy;
    e2 = -skew_advect(*ops_, u1, st.v2, st.v2);
}

Field Stepper::solve_v1(const Field& rhs, const Vec& coef, double coef_mean) const {
    const Grid& g = ops_->grid();
    const int Ns = g.Ns;
    if (mom1_) return mom1_->solve(rhs, prm_.dt * g.dq * coef_mean);

    const double kap = 0.5 * prm_.nu * prm_.dt;
    const double dtdq = prm_.dt * g.dq;
    const auto apply = [&](const Field& f) {
        Field out = g.W * f + kap * apply_stiffness(*ops_, f);
        out.col(0) += dtdq * (coef.array() * f.col(0));
        return out;
    };
    return cg_solve(apply, rhs, [Ns](Field& f) { f.col(Ns).setZero(); }, 1e-12,
                    400 + 40 * (g.Nq + Ns), "tangential viscous solve");
}

Field Stepper::solve_v2(const Field& rhs) const {
    const Grid& g = ops_->grid();
    const int Ns = g.Ns;
    if (mom2_) return mom2_->solve(rhs);

    const double kap = 0.5 * prm_.nu * prm_.dt;
    const auto apply = [&](const Field& f) {
        return Field(g.W * f + kap * apply_stiffness(*ops_, f));
    };
    const auto pin = [Ns](Field& f) {
        f.col(0).setZero();
        f.col(Ns).setZero();
    };
    return cg_solve(apply, rhs, pin, 1e-12, 400 + 40 * (g.Nq + Ns),
                    "normal viscous solve");
}

StepReport Stepper::step(State& st) {
    const Grid& g = ops_->grid();
    const int Ns = g.Ns;
    const double dt = prm_.dt;
    const double nu = prm_.nu;
    StepReport rep;
    rep.dt = dt;

    if (prm_.cfl > 0) {
        const double lim = derive_dt(*ops_, *bg_, st, prm_.cfl, nu);
        if (dt > lim * (1.0 + 1e-12))
            throw NumericsError("courant limit exceeded: dt = " + std::to_string(dt) +
                                " > " + std::to_string(lim));
    }

    const double h0 = wdot(g, st.v1, st.v1) + wdot(g, st.v2, st.v2);
    const double a0 = dirichlet_form(*ops_, st, st);
    const double j0 = j_delta(fm_, st.v1.col(0).matrix(), g);

    Field e1, e2;
    advection_term(st, e1, e2);
    Field ehat1, ehat2;
    if (have_history_) {
        ehat1 = 1.5 * e1 - 0.5 * e1_prev_;
        ehat2 = 1.5 * e2 - 0.5 * e2_prev_;
    } else {
        ehat1 = e1;
        ehat2 = e2;
    }
    e1_prev_ = std::move(e1);
    e2_prev_ = std::move(e2);
    have_history_ = true;

    const double kap = 0.5 * nu * dt;
    Field rhs1 = g.W * st.v1 - kap * apply_stiffness(*ops_, st.v1) +
                 dt * (g.W * ehat1 + load1_);
    Field rhs2 = g.W * st.v2 - kap * apply_stiffness(*ops_, st.v2) + dt * (g.W * ehat2);
    rhs1.col(Ns).setZero();
    rhs2.col(0).setZero();
    rhs2.col(Ns).setZero();

    Field v2n = solve_v2(rhs2);

    // Picard on the wall trace: coefficient frozen at the current trace, the
    // off-mean part lagged to the right side on the direct path, Aitken
    // relaxation between iterates
    Field v1n;
    Vec w = st.v1.col(0).matrix();
    const double expo = 0.5 * (fm_.delta - 1.0);
    const double eps2 = fm_.eps_floor * fm_.eps_floor;
    bool converged = false;
    bool monotone = true;
    double res = 0, res_prev = std::numeric_limits<double>::infinity();
    double theta = 1.0;
    Vec r_prev;
    int iters = 0;

    if (fm_.k == 0.0) {
        const Vec zero = Vec::Zero(g.Nq);
        v1n = solve_v1(rhs1, zero, 0.0);
        converged = true;
        iters = 1;
    } else if (mom1_) {
        // Trace-space Newton. The implicit solve is affine in the wall flux,
        // w = b - M g(w) with M the precomputed trace response, so the wall
        // closure reduces to Nq unknowns with Jacobian I + M diag(g'). g' > 0
        // keeps that matrix invertible at any trace, and a backtracked step
        // rides out the stiff secant slopes near sticking nodes that make a
        // lagged-coefficient iteration cycle.
        const Vec zero = Vec::Zero(g.Nq);
        const double dtdq = dt * g.dq;
        const Vec b = solve_v1(rhs1, zero, 0.0).col(0).matrix();
        const auto residual = [&](const Vec& ww) {
            Vec gw(g.Nq);
            for (int i = 0; i < g.Nq; ++i) gw[i] = fm_.g(ww[i]);
            return Vec(ww - b + wallM_ * gw);
        };
        Vec F = residual(w);
        res = F.lpNorm<Eigen::Infinity>();
        while (res > prm_.picard_tol && iters < prm_.picard_max) {
            Mat J = wallM_;
            for (int j = 0; j < g.Nq; ++j) J.col(j) *= fm_.gp(w[j]);
            J.diagonal().array() += 1.0;
            const Vec dw = J.partialPivLu().solve(-F);

            double lam = 1.0;
            bool accepted = false;
            for (int bt = 0; bt < 40; ++bt, lam *= 0.5) {
                const Vec wn = w + lam * dw;
                const Vec Fn = residual(wn);
                const double rn = Fn.lpNorm<Eigen::Infinity>();
                if (rn < res) {
                    w = wn;
                    F = Fn;
                    res = rn;
                    accepted = true;
                    break;
                }
            }
            ++iters;
            if (!accepted) break;  // no descent left at this precision
        }
        converged = res <= prm_.picard_tol;
        if (converged) {
            Field rhs = rhs1;
            for (int i = 0; i < g.Nq; ++i) rhs(i, 0) -= dtdq * fm_.g(w[i]);
            v1n = solve_v1(rhs, zero, 0.0);
        } else {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3g", res);
            throw NumericsError("friction fixed point stalled after " +
                                std::to_string(iters) +
                                " iterations, trace residual " + buf);
        }
    } else {
        // Wavy wall: the conjugate-gradient solve takes the full per-node
        // secant coefficient in the matrix, so plain refreezing converges;
        // Aitken relaxation speeds up the tail.
        for (int m = 0; m < prm_.picard_max; ++m) {
            Vec coef(g.Nq);
            for (int i = 0; i < g.Nq; ++i)
                coef[i] = fm_.k * std::pow(w[i] * w[i] + eps2, expo);
            v1n = solve_v1(rhs1, coef, coef.mean());

            const Vec r = v1n.col(0).matrix() - w;
            res = r.lpNorm<Eigen::Infinity>();
            iters = m + 1;
            if (m > 0 && res > res_prev) monotone = false;
            res_prev = res;
            if (res <= prm_.picard_tol) {
                converged = true;
                break;
            }
            if (m > 0) {
                const Vec dr = r - r_prev;
                const double den = dr.squaredNorm();
                if (den > 0)
                    theta = std::clamp(-theta * r_prev.dot(dr) / den, 0.1, 10.0);
            }
            w += theta * r;
            r_prev = r;
        }
        if (!converged) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3g", res);
            throw NumericsError("friction fixed point stalled after " +
                                std::to_string(iters) +
                                " iterations, trace residual " + buf);
        }
    }
    rep.picard_iters = iters;
    rep.picard_residual = res;
    rep.picard_monotone = monotone;

    st.v1 = std::move(v1n);
    st.v2 = std::move(v2n);
    Field phi;
    const ProjectionReport prj = pr_->project(st.v1, st.v2, &phi);
    rep.proj_iters = prj.iters;
    rep.proj_residual = prj.residual;
    st.p = phi / dt;
    st.t += dt;

    const double h1 = wdot(g, st.v1, st.v1) + wdot(g, st.v2, st.v2);
    const double a1 = dirichlet_form(*ops_, st, st);
    const double j1 = j_delta(fm_, st.v1.col(0).matrix(), g);
    rep.energy_residual =
        (h1 - h0) / dt + nu * (a1 + a0) / 2 + (j1 + j0) - bg_->forcing_bound_F;
    return rep;
}

RunSummary run_simulation(State v0, const Operators& ops, const Projector& pr,
                          const BackgroundFlow& bg, const FrictionModel& fm,
                          const RunParams& rp) {
    const auto tick = std::chrono::steady_clock::now();
    const Grid& g = ops.grid();

    v0.v1.col(g.Ns).setZero();
    v0.v2.col(0).setZero();
    v0.v2.col(g.Ns).setZero();
    if (rp.project_ic) pr.project(v0.v1, v0.v2);

    StepperParams sp = rp.sp;
    if (sp.dt <= 0) {
        if (sp.cfl <= 0) throw ConfigError("either dt or cfl must be given");
        sp.dt = derive_dt(ops, bg, v0, sp.cfl, sp.nu);
    }
    Stepper stepper(ops, pr, bg, fm, sp);
    if (rp.history) stepper.seed_history(*rp.history);

    RunSummary sum;
    EnergyRecord rec0 = make_record(ops, fm, sp.nu, v0);
    rec0.energy_residual =
        sp.nu * rec0.v_norm_sq + 2.0 * rec0.j_value - bg.forcing_bound_F;
    sum.records.push_back(rec0);
    if (rp.keep_snapshots) sum.snapshots.push_back(v0);

    const double t0 = v0.t;
    if (rp.T_end > t0 + 0.5 * sp.dt && !(rp.snapshot_dt > 0))
        throw ConfigError("snapshot_dt must be positive for a timed run");

    State st = std::move(v0);
    State before;  // previous state; steadiness test and restart history
    long cadence = 1;
    double max_R = 0;
    bool any_step = false;

    while (st.t < rp.T_end - 0.5 * sp.dt) {
        before = st;
        StepReport rep;
        try {
            rep = stepper.step(st);
        } catch (const NumericsError& e) {
            throw NumericsError("t = " + std::to_string(st.t) + ": " + e.what());
        }
        ++sum.total_steps;
        max_R = any_step ? std::max(max_R, rep.energy_residual) : rep.energy_residual;
        any_step = true;
        if (!rep.picard_monotone) ++sum.picard_monotone_violations;

        bool steady_now = false;
        if (rp.steady_tol > 0) {
            const double dv = std::max((st.v1 - before.v1).abs().maxCoeff(),
                                       (st.v2 - before.v2).abs().maxCoeff());
            steady_now = dv / sp.dt <= rp.steady_tol;
        }
        const bool cadence_now =
            st.t >= t0 + double(cadence) * rp.snapshot_dt - 1e-9 * sp.dt;
        const bool last = steady_now || !(st.t < rp.T_end - 0.5 * sp.dt);
        if (cadence_now || last) {
            EnergyRecord rec = make_record(ops, fm, sp.nu, st);
            const EnergyRecord& prev = sum.records.back();
            rec.energy_residual =
                energy_residual(prev, rec, rec.t - prev.t, sp.nu, bg.forcing_bound_F);
            sum.records.push_back(rec);
            if (rp.keep_snapshots) sum.snapshots.push_back(st);
            while (st.t >= t0 + double(cadence) * rp.snapshot_dt - 1e-9 * sp.dt)
                ++cadence;
        }
        if (steady_now) {
            sum.reached_steady = true;
            break;
        }
    }

    sum.max_step_R = any_step ? max_R : 0.0;
    if (any_step) {
        sum.prev_state = std::move(before);
        sum.has_prev = true;
    }
    sum.final_time = st.t;
    sum.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - tick).count();
    return sum;
}

}  // namespace tcf
