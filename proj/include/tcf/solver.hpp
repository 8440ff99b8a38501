#pragma once

#include <memory>
#include <vector>

#include "tcf/background.hpp"
#include "tcf/diagnostics.hpp"
#include "tcf/friction.hpp"
#include "tcf/modal.hpp"
#include "tcf/operators.hpp"
#include "tcf/projection.hpp"

namespace tcf {

struct StepperParams {
    double nu = 0;
    double dt = 0;   // fixed step; resolve through derive_dt when driving by cfl
    double cfl = 0;  // > 0 turns on the per-step Courant check
    double proj_tol = 1e-10;
    int proj_max_iter = 4000;
    double picard_tol = 1e-10;
    int picard_max = 50;

    void validate() const;
};

// Largest admissible step at the given state: cfl times the smaller of the
// advective limit dx/|u|_max and the diffusive limit dx^2/(4 nu), with dx the
// smallest metric spacing. The background velocity counts toward |u|.
double derive_dt(const Operators& ops, const BackgroundFlow& bg, const State& st,
                 double cfl, double nu);

struct StepReport {
    double dt = 0;
    int picard_iters = 0;
    double picard_residual = 0;
    bool picard_monotone = true;
    int proj_iters = 0;
    double proj_residual = 0;
    double energy_residual = 0;  // per-step R of the energy monitor
};

// One IMEX step: Adams-Bashforth extrapolation of advection and shear
// coupling, Crank-Nicolson diffusion with the friction wall closure folded
// into the implicit solve by Picard iteration on the wall trace, then a
// divergence-free projection. The first step after construction (or after
// reset_history) bootstraps with explicit Euler.
class Stepper {
public:
    Stepper(const Operators& ops, const Projector& pr, const BackgroundFlow& bg,
            const FrictionModel& fm, const StepperParams& prm);

    StepReport step(State& st);

    void reset_history();
    // resume second-order stepping from a stored predecessor state
    void seed_history(const State& prev);

    double dt() const { return prm_.dt; }
    const StepperParams& params() const { return prm_; }

private:
    const Operators* ops_;
    const Projector* pr_;
    const BackgroundFlow* bg_;
    FrictionModel fm_;
    StepperParams prm_;

    Field load1_;  // background curvature load; wall row in discrete flux form
    std::unique_ptr<ModalSolver> mom1_, mom2_;  // direct solvers, constant height only
    Mat wallM_;  // wall-trace response to a unit wall flux (direct path only)
    bool have_history_ = false;
    Field e1_prev_, e2_prev_;

    void advection_term(const State& st, Field& e1, Field& e2) const;
    Field solve_v1(const Field& rhs, const Vec& coef, double coef_mean) const;
    Field solve_v2(const Field& rhs) const;
};

struct RunParams {
    StepperParams sp;
    double T_end = 0;
    double snapshot_dt = 0;  // record cadence; required when T_end > start time
    double steady_tol = 0;   // > 0 stops early once max|dv|/dt falls below it
    bool keep_snapshots = true;
    bool project_ic = true;  // restarted states are already solenoidal; skip
    const State* history = nullptr;  // predecessor state for restart stepping
};

struct RunSummary {
    std::vector<EnergyRecord> records;
    std::vector<State> snapshots;
    State prev_state;        // state one step before the final one
    bool has_prev = false;   // false when no step was taken
    double max_step_R = 0;  // largest per-step energy residual (0 if no steps)
    long total_steps = 0;
    int picard_monotone_violations = 0;
    double wall_seconds = 0;
    bool reached_steady = false;
    double final_time = 0;
};

// Advance v0 to T_end, logging records and snapshots at the snapshot_dt
// cadence (row 0 carries the steady-form residual nu ||v||^2 + 2 j - F; later
// rows the pair residual against the previous row, so the column can be
// recomputed from the file alone). The initial state is boundary-conditioned
// and projected on ingest.
RunSummary run_simulation(State v0, const Operators& ops, const Projector& pr,
                          const BackgroundFlow& bg, const FrictionModel& fm,
                          const RunParams& rp);

}  // namespace tcf
