#include "tcf/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "tcf/checkpoint.hpp"
#include "tcf/config.hpp"
#include "tcf/dimension.hpp"
#include "tcf/errors.hpp"
#include "tcf/manifest.hpp"
#include "tcf/sampling.hpp"
#include "tcf/solver.hpp"
#include "tcf/trajectory.hpp"

namespace tcf {

namespace {

Grid grid_from(const RunConfig& cfg) {
    ChannelGeometry gm;
    gm.L = cfg.L;
    gm.Nq = int(cfg.Nq);
    gm.Ns = int(cfg.Ns);
    gm.h.mean = cfg.h_mean;
    gm.h.cos_c = cfg.h_cos;
    gm.h.sin_c = cfg.h_sin;
    return build_grid(gm);
}

// Everything a command needs, built once from the parsed configuration.
struct Problem {
    RunConfig cfg;
    Grid grid;
    Operators ops;
    Projector pr;
    BackgroundFlow bg;
    FrictionModel fm;

    explicit Problem(RunConfig c)
        : cfg(std::move(c)),
          grid(grid_from(cfg)),
          ops(make_operators(grid)),
          pr(ops, cfg.proj_tol, int(cfg.proj_max_iter)),
          bg(build_background(cfg.U0, cfg.alpha, grid, cfg.nu)) {
        fm.k = cfg.k;
        fm.delta = cfg.delta;
        fm.eps_floor = cfg.eps_floor;
        fm.validate();
    }

    StepperParams stepper_params() const {
        StepperParams sp;
        sp.nu = cfg.nu;
        sp.dt = cfg.dt;
        sp.cfl = cfg.cfl;
        sp.proj_tol = cfg.proj_tol;
        sp.proj_max_iter = int(cfg.proj_max_iter);
        sp.picard_tol = cfg.picard_tol;
        sp.picard_max = int(cfg.picard_max);
        return sp;
    }

    State initial_state() const {
        if (cfg.ic == "zero") return State::zero(int(cfg.Nq), int(cfg.Ns));
        if (cfg.seed < 0)
            throw ConfigError("seed is mandatory for sampled initial conditions");
        SampleSpec spec;
        spec.q_modes = int(cfg.ic_q_modes);
        spec.s_modes = int(cfg.ic_s_modes);
        spec.decay = cfg.ic_decay;
        State st = sample_state(ops, pr, std::uint64_t(cfg.seed),
                                std::uint64_t(cfg.ic_index), spec);
        st.v1 *= cfg.ic_scale;
        st.v2 *= cfg.ic_scale;
        return st;
    }

    CheckpointHeader header(double t) const {
        CheckpointHeader h;
        h.Nq = std::uint64_t(cfg.Nq);
        h.Ns = std::uint64_t(cfg.Ns);
        h.L = cfg.L;
        h.t = t;
        h.nu = cfg.nu;
        h.k = cfg.k;
        h.delta = cfg.delta;
        h.eps_floor = cfg.eps_floor;
        h.U0 = cfg.U0;
        h.alpha = cfg.alpha;
        return h;
    }
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.8g", v);
    return buf;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const std::string tok =
            text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        if (!tok.empty()) {
            try {
                std::size_t used = 0;
                out.push_back(std::stod(tok, &used));
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw ConfigError("cannot parse " + what + " entry '" + tok + "'");
            }
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw ConfigError(what + " list is empty");
    return out;
}

RunManifest start_manifest(const RunConfig& cfg) {
    RunManifest man;
    man.code_version = kCodeVersion;
    man.config = serialize_config(cfg);
    man.config_hash = checksum_hex(man.config);
    man.started_at = now_utc_iso();
    return man;
}

void finish_manifest(const std::string& dir, RunManifest& man,
                     const std::vector<std::string>& names) {
    man.finished_at = now_utc_iso();
    man.files.clear();
    for (const std::string& n : names) man.files.push_back(make_entry(dir, n));
    write_manifest(dir, man);
}

// Step size snapped so that n steps tile one sampling interval exactly.
double snap_dt(double dt, double dt_sample) {
    const double n = std::ceil(dt_sample / dt - 1e-9);
    return dt_sample / std::max(1.0, n);
}

double resolve_dt(const Problem& p, const State& v0) {
    if (p.cfg.dt > 0) return p.cfg.dt;
    if (p.cfg.cfl > 0) return derive_dt(p.ops, p.bg, v0, p.cfg.cfl, p.cfg.nu);
    throw ConfigError("either dt or cfl must be given");
}

StoredRun as_stored_run(const Grid& g, RunSummary&& sum, double t0,
                        double dt_sample) {
    StoredRun run;
    run.grid = &g;
    run.t0 = t0;
    run.dt_sample = dt_sample;
    run.states = std::move(sum.snapshots);
    return run;
}

int cmd_run(const std::string& config_path, const std::string& out_override,
            const std::string& restart_path) {
    RunConfig cfg = load_config(config_path);
    if (!out_override.empty()) cfg.out_dir = out_override;
    Problem p(std::move(cfg));
    RunManifest man = start_manifest(p.cfg);

    RunParams rp;
    rp.sp = p.stepper_params();
    rp.T_end = p.cfg.T_end;
    rp.snapshot_dt = p.cfg.snapshot_dt;
    rp.steady_tol = p.cfg.steady_tol;

    State v0;
    State prev;
    if (restart_path.empty()) {
        v0 = p.initial_state();
    } else {
        CheckpointHeader hdr;
        v0 = load_checkpoint(restart_path, hdr);
        require_dims(hdr, p.cfg.Nq, p.cfg.Ns);
        if (std::abs(hdr.L - p.cfg.L) > 1e-12 * std::max(1.0, p.cfg.L))
            throw ConfigError("checkpoint period L = " + fmt(hdr.L) +
                              " does not match the configured " + fmt(p.cfg.L));
        rp.project_ic = false;  // checkpointed states are already solenoidal

        std::string prev_path = restart_path;
        const std::string suffix = ".tcf";
        if (prev_path.size() > suffix.size() &&
            prev_path.compare(prev_path.size() - suffix.size(), suffix.size(),
                              suffix) == 0)
            prev_path.insert(prev_path.size() - suffix.size(), "_prev");
        else
            prev_path += "_prev";
        if (std::filesystem::exists(prev_path)) {
            CheckpointHeader ph;
            prev = load_checkpoint(prev_path, ph);
            require_dims(ph, p.cfg.Nq, p.cfg.Ns);
            // the stored spacing must equal the configured step or the
            // two-step history is meaningless; fall back to a fresh start
            if (rp.sp.dt > 0 &&
                std::abs((v0.t - prev.t) - rp.sp.dt) <= 1e-9 * rp.sp.dt)
                rp.history = &prev;
            else
                std::cout << "restart: predecessor spacing does not match dt; "
                             "bootstrapping first step\n";
        }
    }

    RunSummary sum = run_simulation(std::move(v0), p.ops, p.pr, p.bg, p.fm, rp);

    const std::string dir = p.cfg.out_dir;
    std::filesystem::create_directories(dir);
    write_file_atomic(dir + "/energy.csv", energy_csv(sum.records));
    std::vector<std::string> names = {"energy.csv"};

    const State& fin = sum.snapshots.back();
    save_checkpoint(dir + "/final.tcf", fin, p.header(fin.t));
    names.push_back("final.tcf");
    if (sum.has_prev) {
        save_checkpoint(dir + "/final_prev.tcf", sum.prev_state,
                        p.header(sum.prev_state.t));
        names.push_back("final_prev.tcf");
    }
    finish_manifest(dir, man, names);

    std::cout << "run complete: t = " << fmt(sum.final_time)
              << ", steps = " << sum.total_steps
              << ", records = " << sum.records.size()
              << (sum.reached_steady ? ", steady" : "") << ", out = " << dir
              << "\n";
    return 0;
}

int cmd_constants(const std::string& config_path, const std::string& out_dir,
                  long n_lady, long n_hopf) {
    Problem p(load_config(config_path));
    if (p.cfg.seed < 0)
        throw ConfigError("seed is mandatory for sampled constant estimation");
    const ConstantsEstimate ce =
        estimate_constants(p.ops, p.pr, p.bg, int(n_lady), int(n_hopf),
                           std::uint64_t(p.cfg.seed));

    nlohmann::json j;
    j["lambda1"] = ce.lambda1;
    j["c_lady"] = ce.c_lady;
    j["hopf_ratio"] = ce.hopf_ratio;
    j["F"] = ce.F;
    j["nu"] = p.cfg.nu;
    j["alpha"] = p.cfg.alpha;
    j["U0"] = p.cfg.U0;
    j["grid"] = std::to_string(p.cfg.Nq) + "x" + std::to_string(p.cfg.Ns);
    std::cout << j.dump(2) << "\n";

    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        RunManifest man = start_manifest(p.cfg);
        write_file_atomic(out_dir + "/constants.json", j.dump(2) + "\n");
        finish_manifest(out_dir, man, {"constants.json"});
    }
    return 0;
}

// Steady shear balance of the regularized friction law, by bisection.
double couette_bottom_speed(double nu, double h, double U0, const FrictionModel& fm) {
    const auto f = [&](double u) {
        const double x = U0 - u;
        return nu * u / h -
               fm.k *
                   std::pow(x * x + fm.eps_floor * fm.eps_floor,
                            0.5 * (fm.delta - 1.0)) *
                   x;
    };
    double lo = 0.0, hi = U0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

int cmd_validate_couette(const std::string& regime, int size, double t_end) {
    RunConfig cfg;
    cfg.Nq = size;
    cfg.Ns = size;
    cfg.L = 1.0;
    cfg.nu = 0.1;
    cfg.U0 = 1.0;
    cfg.alpha = 1.0;
    cfg.k = regime == "stick" ? 0.2 : 0.05;
    cfg.delta = 0.1;
    cfg.eps_floor = 1e-6;
    cfg.cfl = 0.8;
    cfg.T_end = t_end;
    cfg.snapshot_dt = t_end > 0 ? t_end : 1.0;
    Problem p(std::move(cfg));

    const double ub = couette_bottom_speed(0.1, 1.0, 1.0, p.fm);
    State v0 = State::zero(size, size);
    for (int i = 0; i < size; ++i)
        for (int j = 0; j <= size; ++j)
            v0.v1(i, j) = ub * (1.0 - p.grid.s[j]) - p.bg.U(i, j);

    RunParams rp;
    rp.sp = p.stepper_params();
    rp.T_end = p.cfg.T_end;
    rp.snapshot_dt = p.cfg.snapshot_dt;
    RunSummary sum = run_simulation(std::move(v0), p.ops, p.pr, p.bg, p.fm, rp);
    const State& fin = sum.snapshots.back();

    bool ok = true;
    std::cout << "couette " << regime << " at " << size << "x" << size
              << ", T = " << fmt(sum.final_time) << "\n";
    if (regime == "stick") {
        double err = 0;
        for (int i = 0; i < size; ++i)
            for (int j = 0; j <= size; ++j)
                err = std::max(err, std::abs(fin.v1(i, j) + p.bg.U(i, j) -
                                             p.cfg.U0 * (1.0 - p.grid.s[j])));
        std::cout << "  profile error vs driven shear: " << fmt(err)
                  << " (band 1e-3 at 64x64)\n";
        ok = err <= 1e-3;
    } else {
        double ub_disc = 0;
        for (int i = 0; i < size; ++i)
            ub_disc += (fin.v1(i, 0) + p.bg.U(i, 0)) / size;
        const double target = p.fm.k * p.grid.h_min / p.cfg.nu;
        const double gap = std::abs(ub_disc - target) / p.cfg.U0;
        const WallTrace stress = tangential_stress(fin, p.grid, p.cfg.nu);
        const WallTrace wall = fin.v1.col(0).matrix();
        const auto [r_eq, r_bound] =
            complementarity_residual(p.fm, wall, (-stress).eval(), p.grid);
        std::cout << "  bottom speed " << fmt(ub_disc) << " vs k h / nu = "
                  << fmt(target) << ": relative gap " << fmt(gap)
                  << " (band 0.02)\n";
        std::cout << "  complementarity r_eq = " << fmt(r_eq) << ", r_bound = "
                  << fmt(r_bound) << " (bands " << fmt(1e-3 * p.fm.k) << ")\n";
        ok = gap <= 0.02 && r_eq <= 1e-3 * p.fm.k && r_bound <= 1e-3 * p.fm.k;
    }
    if (!ok) {
        std::cerr << "error: validation: couette " << regime
                  << " outside the documented bands\n";
        return 1;
    }
    std::cout << "  within bands\n";
    return 0;
}

int cmd_trajectories(const std::string& config_path, const std::string& out_override,
                     double l_flag, double dts_flag, const std::string& shifts_text) {
    RunConfig cfg = load_config(config_path);
    if (!out_override.empty()) cfg.out_dir = out_override;
    if (l_flag > 0) cfg.l = l_flag;
    if (dts_flag > 0) cfg.dt_sample = dts_flag;
    Problem p(std::move(cfg));
    RunManifest man = start_manifest(p.cfg);

    const std::vector<double> shifts = parse_list(shifts_text, "shift");
    for (double s : shifts)
        if (s < 0) throw ConfigError("shifts must be nonnegative");
    const double max_shift = *std::max_element(shifts.begin(), shifts.end());

    State v0 = p.initial_state();
    const double dts = p.cfg.dt_sample;
    const double burn = std::floor(p.cfg.burn_in / dts + 1e-9) * dts;
    const double horizon = burn + p.cfg.l + max_shift;
    const double T = std::ceil(horizon / dts - 1e-9) * dts;

    RunParams rp;
    rp.sp = p.stepper_params();
    rp.sp.dt = snap_dt(resolve_dt(p, v0), dts);
    rp.T_end = T;
    rp.snapshot_dt = dts;
    RunSummary sum = run_simulation(std::move(v0), p.ops, p.pr, p.bg, p.fm, rp);

    const long want = std::lround(T / dts) + 1;
    if (long(sum.snapshots.size()) != want)
        throw NumericsError("expected " + std::to_string(want) + " snapshots, got " +
                            std::to_string(sum.snapshots.size()));
    const StoredRun run = as_stored_run(p.grid, std::move(sum), 0.0, dts);
    const TrajectorySegment base(run, burn, p.cfg.l);

    std::vector<TrajectorySegment> windows;
    for (double s : shifts) windows.push_back(shift_segment(base, s));

    std::string csv = "shift_i,shift_j,distance\n";
    for (std::size_t i = 0; i < windows.size(); ++i)
        for (std::size_t j = 0; j < windows.size(); ++j) {
            csv += fmt(shifts[i]);
            csv += ',';
            csv += fmt(shifts[j]);
            csv += ',';
            csv += fmt(i == j ? 0.0 : xl_distance(windows[i], windows[j]));
            csv += '\n';
        }

    const std::string dir = p.cfg.out_dir;
    std::filesystem::create_directories(dir);
    write_file_atomic(dir + "/distances.csv", csv);
    std::vector<std::string> names = {"distances.csv"};

    long pairs = 0;
    for (std::size_t i = 0; i < shifts.size(); ++i)
        for (std::size_t j = i + 1; j < shifts.size(); ++j)
            if (std::abs(shifts[i] - shifts[j]) > 0) ++pairs;
    if (pairs >= 5) {
        const HolderFit fit = holder_fit(base, shifts);
        nlohmann::json j;
        j["c"] = fit.c;
        j["beta"] = fit.beta;
        j["r2"] = fit.r2;
        j["degenerate"] = fit.degenerate;
        write_file_atomic(dir + "/holder.json", j.dump(2) + "\n");
        names.push_back("holder.json");
        std::cout << "holder fit: beta = " << fmt(fit.beta) << ", r2 = "
                  << fmt(fit.r2) << (fit.degenerate ? " (degenerate)" : "") << "\n";
    }
    finish_manifest(dir, man, names);
    std::cout << "trajectories complete: " << windows.size() << " windows of length "
              << fmt(p.cfg.l) << ", out = " << dir << "\n";
    return 0;
}

int cmd_dimension(const std::string& config_path, const std::string& out_override,
                  long ensemble_flag, double burn_flag, long m_flag,
                  const std::string& eps_text) {
    RunConfig cfg = load_config(config_path);
    if (!out_override.empty()) cfg.out_dir = out_override;
    if (ensemble_flag > 0) cfg.ensemble = ensemble_flag;
    if (burn_flag >= 0) cfg.burn_in = burn_flag;
    if (m_flag > 0) cfg.m = m_flag;
    Problem p(std::move(cfg));
    if (p.cfg.seed < 0)
        throw ConfigError("seed is mandatory for ensemble sampling");
    RunManifest man = start_manifest(p.cfg);

    const double dts = p.cfg.dt_sample;
    const double burn = std::floor(p.cfg.burn_in / dts + 1e-9) * dts;
    const double T = std::ceil((burn + p.cfg.l) / dts - 1e-9) * dts;

    SampleSpec spec;
    spec.q_modes = int(p.cfg.ic_q_modes);
    spec.s_modes = int(p.cfg.ic_s_modes);
    spec.decay = p.cfg.ic_decay;

    std::vector<std::unique_ptr<StoredRun>> runs;
    std::vector<TrajectorySegment> segments;
    double dt = p.cfg.dt;
    for (long i = 0; i < p.cfg.ensemble; ++i) {
        State v0 = sample_state(p.ops, p.pr, std::uint64_t(p.cfg.seed),
                                std::uint64_t(i), spec);
        v0.v1 *= p.cfg.ic_scale;
        v0.v2 *= p.cfg.ic_scale;
        if (dt <= 0) dt = resolve_dt(p, v0);  // one shared step for the ensemble

        RunParams rp;
        rp.sp = p.stepper_params();
        rp.sp.dt = snap_dt(dt, dts);
        rp.T_end = T;
        rp.snapshot_dt = dts;
        RunSummary sum = run_simulation(std::move(v0), p.ops, p.pr, p.bg, p.fm, rp);
        runs.push_back(std::make_unique<StoredRun>(
            as_stored_run(p.grid, std::move(sum), 0.0, dts)));
        segments.emplace_back(*runs.back(), burn, p.cfg.l);
    }

    std::vector<double> ladder;
    if (!eps_text.empty()) {
        ladder = parse_list(eps_text, "epsilon");
    } else {
        double diam = 0;  // ladder from the ensemble diameter down two decades
        for (std::size_t a = 0; a < segments.size(); ++a)
            for (std::size_t b = a + 1; b < segments.size(); ++b)
                diam = std::max(diam, xl_distance(segments[a], segments[b]));
        if (diam <= 1e-12) diam = 1.0;
        for (int kk = 0; kk < 14; ++kk)
            ladder.push_back(diam * std::pow(0.7, kk));
    }

    const DimensionReport rep = dimension_estimate(segments, int(p.cfg.m), ladder);

    nlohmann::json j;
    j["box_dim"] = rep.cloud.box_dim;
    j["corr_dim"] = rep.cloud.corr_dim;
    j["m"] = rep.m;
    j["retained_variance"] = rep.retained_variance;
    j["segments"] = segments.size();
    j["eps"] = rep.cloud.eps;
    j["n_eps"] = rep.cloud.n_eps;

    std::string csv = "kind,x,y\n";
    for (std::size_t i = 0; i < rep.cloud.eps.size(); ++i) {
        csv += "box,";
        csv += fmt(rep.cloud.eps[i]);
        csv += ',';
        csv += fmt(double(rep.cloud.n_eps[i]));
        csv += '\n';
    }
    for (std::size_t i = 0; i < rep.cloud.corr_r.size(); ++i) {
        csv += "corr,";
        csv += fmt(rep.cloud.corr_r[i]);
        csv += ',';
        csv += fmt(rep.cloud.corr_c[i]);
        csv += '\n';
    }

    const std::string dir = p.cfg.out_dir;
    std::filesystem::create_directories(dir);
    write_file_atomic(dir + "/report.json", j.dump(2) + "\n");
    write_file_atomic(dir + "/curves.csv", csv);
    finish_manifest(dir, man, {"report.json", "curves.csv"});

    std::cout << "dimension complete: box = " << fmt(rep.cloud.box_dim)
              << ", correlation = " << fmt(rep.cloud.corr_dim)
              << ", retained variance = " << fmt(rep.retained_variance)
              << ", out = " << dir << "\n";
    return 0;
}

}  // namespace

int cli_main(std::vector<std::string> args) {
    CLI::App app{"channel flow with friction: run, validate, analyze"};
    app.require_subcommand(1);

    std::string config_path, out_dir, restart_path;

    auto* run = app.add_subcommand("run", "advance a configured flow and write outputs");
    run->add_option("--config", config_path, "configuration file")->required();
    run->add_option("--out", out_dir, "output directory (overrides output.dir)");
    run->add_option("--restart", restart_path, "checkpoint to resume from");

    auto* validate = app.add_subcommand("validate", "closed-form validation problems");
    validate->require_subcommand(1);
    auto* couette = validate->add_subcommand(
        "couette", "steady shear against the friction balance");
    std::string regime;
    int size = 64;
    double t_end = 6.0;
    couette->add_option("--regime", regime, "stick or slip")
        ->required()
        ->check(CLI::IsMember({"stick", "slip"}));
    couette->add_option("--size", size, "grid points per direction")
        ->check(CLI::Range(8, 256));
    couette->add_option("--t-end", t_end, "integration horizon");

    auto* constants = app.add_subcommand("constants", "sampled functional constants");
    constants->add_option("--config", config_path, "configuration file")->required();
    constants->add_option("--out", out_dir, "also write constants.json here");
    long n_lady = 2000, n_hopf = 200;
    constants->add_option("--n-lady", n_lady, "interpolation samples")
        ->check(CLI::PositiveNumber);
    constants->add_option("--n-hopf", n_hopf, "pairing samples")
        ->check(CLI::PositiveNumber);

    auto* traj = app.add_subcommand("trajectories",
                                    "window distances over a stored run");
    traj->add_option("--config", config_path, "configuration file")->required();
    traj->add_option("--out", out_dir, "output directory");
    double l_flag = 0, dts_flag = 0;
    std::string shifts_text = "0,0.25,0.5,1.0";
    traj->add_option("--l", l_flag, "window length (overrides config)");
    traj->add_option("--dt-sample", dts_flag, "sampling step (overrides config)");
    traj->add_option("--shifts", shifts_text, "comma-separated shift times");

    auto* dim = app.add_subcommand("dimension", "attractor dimension from an ensemble");
    dim->add_option("--config", config_path, "configuration file")->required();
    dim->add_option("--out", out_dir, "output directory");
    long ensemble_flag = 0, m_flag = 0;
    double burn_flag = -1;
    std::string eps_text;
    dim->add_option("--ensemble", ensemble_flag, "ensemble size (overrides config)");
    dim->add_option("--burn-in", burn_flag, "discarded lead time (overrides config)");
    dim->add_option("--m", m_flag, "projection rank (overrides config)");
    dim->add_option("--eps", eps_text, "comma-separated epsilon ladder");

    auto* verify = app.add_subcommand("verify-manifest",
                                      "recheck checksums of a run directory");
    std::string verify_dir;
    verify->add_option("dir", verify_dir, "run directory")->required();

    std::vector<const char*> argv;
    argv.push_back("tcf");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        try {
            app.parse(int(argv.size()), argv.data());
        } catch (const CLI::CallForHelp& e) {
            return app.exit(e);
        } catch (const CLI::CallForAllHelp& e) {
            return app.exit(e);
        } catch (const CLI::ParseError& e) {
            std::cerr << "error: usage: " << e.what() << "\n";
            return 2;
        }

        if (run->parsed()) return cmd_run(config_path, out_dir, restart_path);
        if (couette->parsed()) return cmd_validate_couette(regime, size, t_end);
        if (constants->parsed())
            return cmd_constants(config_path, out_dir, n_lady, n_hopf);
        if (traj->parsed())
            return cmd_trajectories(config_path, out_dir, l_flag, dts_flag,
                                    shifts_text);
        if (dim->parsed())
            return cmd_dimension(config_path, out_dir, ensemble_flag, burn_flag,
                                 m_flag, eps_text);
        if (verify->parsed()) {
            verify_manifest(verify_dir);
            std::cout << "manifest ok: " << read_manifest(verify_dir).files.size()
                      << " files verified\n";
            return 0;
        }
        std::cerr << "error: usage: no subcommand given\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: config: " << e.what() << "\n";
        return 2;
    } catch (const NumericsError& e) {
        std::cerr << "error: numerics: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "error: io: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace tcf
