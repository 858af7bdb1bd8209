#include "nsch/presets.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"
#include "nsch/operators.hpp"
#include "nsch/sampling.hpp"
#include "nsch/spectral_ops.hpp"

namespace nsch {

ScalarField drop_profile(GridPtr grid, double radius, double eps) {
    const Grid& g = *grid;
    const double cx = 0.5 * g.lx();
    const double cy = 0.5 * g.ly();
    ScalarField phi(grid);
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i) {
            double dx = std::abs(g.x(i) - cx);
            double dy = std::abs(g.y(j) - cy);
            dx = std::min(dx, g.lx() - dx);
            dy = std::min(dy, g.ly() - dy);
            const double r = std::hypot(dx, dy);
            phi(i, j) = std::tanh((radius - r) / (std::numbers::sqrt2 * eps));
        }
    return phi;
}

VectorField MmsFunctions::v_star(GridPtr grid, double t) const {
    const double at = a(t), bt = b(t);
    return VectorField(
        sample_field(grid, [at](double, double y) { return at * std::sin(y); }),
        sample_field(grid, [bt](double x, double) { return bt * std::sin(x); }));
}

VectorField MmsFunctions::dtv_star(GridPtr grid, double t) const {
    const double at = da(t), bt = db(t);
    return VectorField(
        sample_field(grid, [at](double, double y) { return at * std::sin(y); }),
        sample_field(grid, [bt](double x, double) { return bt * std::sin(x); }));
}

ScalarField MmsFunctions::phi_star(GridPtr grid, double t) const {
    const double ct = c(t);
    return sample_field(grid, [ct](double x, double) { return ct * std::cos(x); });
}

ScalarField MmsFunctions::dtphi_star(GridPtr grid, double t) const {
    const double ct = dc(t);
    return sample_field(grid, [ct](double x, double) { return ct * std::cos(x); });
}

SourceFn MmsFunctions::make_source(GridPtr grid, const ModelParams& params) const {
    // Coefficients frozen at phi*(0). At the fixed point the frozen terms of
    // L and F cancel, so the source is freeze-independent and the same
    // closure serves every continuation window.
    const ScalarField phi0 = phi_star(grid, 0.0);
    const ScalarField rho0 = coeff_eval(Coefficient::Rho, phi0, params);
    const ScalarField eta0 = coeff_eval(Coefficient::Eta, phi0, params);
    const ScalarField m0 = coeff_eval(Coefficient::M, phi0, params);
    const MmsFunctions mms = *this;
    const double eps = params.epsilon();
    return [grid, params, rho0, eta0, m0, mms, eps](double t) {
        const VectorField v = mms.v_star(grid, t);
        const VectorField dtv = mms.dtv_star(grid, t);
        const ScalarField phi = mms.phi_star(grid, t);
        const ScalarField dtphi = mms.dtphi_star(grid, t);

        const VectorField mass(hadamard(rho0, dtv.x()), hadamard(rho0, dtv.y()));
        const SymTensor Dv = sym_gradient(v);
        const SymTensor S{2.0 * hadamard(eta0, Dv.s11), 2.0 * hadamard(eta0, Dv.s22),
                          2.0 * hadamard(eta0, Dv.s12)};
        VectorField fL = leray_project(mass - tensor_divergence(S));
        ScalarField gL = dtphi + eps * hadamard(m0, bilaplacian(phi));

        fL -= leray_project(eval_F1(v, dtv, phi, params, rho0, eta0));
        gL -= eval_F2(v, phi, params, m0);
        return std::make_pair(std::move(fL), std::move(gL));
    };
}

namespace {

// Poisson-kernel product: analytic, periodic, full spectrum with |m|-th
// Fourier amplitude ~ r^|m|; grid-independent closed form.
double poisson_kernel(double theta, double r) {
    return (1.0 - r * r) / (1.0 - 2.0 * r * std::cos(theta) + r * r);
}

ScalarField analytic_phi(GridPtr grid) {
    const double r = 0.45;
    const double pmax = (1.0 + r) / (1.0 - r);
    const double scale = 0.4 / (pmax * pmax - 1.0);
    return sample_field(grid, [=](double x, double y) {
        return scale * (poisson_kernel(x, r) * poisson_kernel(y, r) - 1.0);
    });
}

ScalarField analytic_phi_frozen(GridPtr grid) {
    const double r = 0.45;
    const double pmax = (1.0 + r) / (1.0 - r);
    const double scale = 0.35 / (pmax * pmax - 1.0);
    return sample_field(grid, [=](double x, double y) {
        return scale * (poisson_kernel(x + 0.7, r) * poisson_kernel(y + 1.3, r) - 1.0);
    });
}

VectorField analytic_v(GridPtr grid) {
    const double r = 0.45;
    return VectorField(
        sample_field(grid,
                     [=](double x, double y) {
                         return 0.2 * (poisson_kernel(x + 0.5, r) * poisson_kernel(y + 1.1, r) -
                                       1.0);
                     }),
        sample_field(grid, [=](double x, double y) {
            return 0.2 * (poisson_kernel(x + 2.0, r) * poisson_kernel(y + 0.3, r) - 1.0);
        }));
}

VectorField analytic_dtv(GridPtr grid) {
    const double r = 0.45;
    return VectorField(
        sample_field(grid,
                     [=](double x, double y) {
                         return 0.15 * (poisson_kernel(x + 1.7, r) * poisson_kernel(y + 0.9, r) -
                                        1.0);
                     }),
        sample_field(grid, [=](double x, double y) {
            return 0.15 * (poisson_kernel(x + 0.2, r) * poisson_kernel(y + 2.4, r) - 1.0);
        }));
}

ScalarField restrict_to(GridPtr coarse, const ScalarField& fine) {
    ScalarField out(coarse);
    const int rx = fine.grid().nx() / coarse->nx();
    const int ry = fine.grid().ny() / coarse->ny();
    for (int j = 0; j < coarse->ny(); ++j)
        for (int i = 0; i < coarse->nx(); ++i) out(i, j) = fine(i * rx, j * ry);
    return out;
}

} // namespace

void mms_spatial_study(const ModelParams& params, const std::vector<int>& grids,
                       std::vector<double>& err_f1, std::vector<double>& err_f2) {
    err_f1.clear();
    err_f2.clear();
    const double L = 2.0 * std::numbers::pi;
    std::vector<VectorField> f1s;
    std::vector<ScalarField> f2s;
    std::vector<GridPtr> gps;
    for (int n : grids) {
        GridPtr g = make_grid(n, n, L, L);
        const ScalarField phi = analytic_phi(g);
        const ScalarField phi_fr = analytic_phi_frozen(g);
        const VectorField v = analytic_v(g);
        const VectorField dtv = analytic_dtv(g);
        const ScalarField rho0 = coeff_eval(Coefficient::Rho, phi_fr, params);
        const ScalarField eta0 = coeff_eval(Coefficient::Eta, phi_fr, params);
        const ScalarField m0 = coeff_eval(Coefficient::M, phi_fr, params);
        f1s.push_back(eval_F1(v, dtv, phi, params, rho0, eta0));
        f2s.push_back(eval_F2(v, phi, params, m0));
        gps.push_back(g);
    }
    for (std::size_t i = 0; i + 1 < grids.size(); ++i) {
        const ScalarField rx = restrict_to(gps[i], f1s[i + 1].x());
        const ScalarField ry = restrict_to(gps[i], f1s[i + 1].y());
        const double scale1 = std::max(1e-300, std::max(rx.max_abs(), ry.max_abs()));
        const double e1 = std::max((f1s[i].x() - rx).max_abs(), (f1s[i].y() - ry).max_abs());
        err_f1.push_back(e1 / scale1);
        const ScalarField r2 = restrict_to(gps[i], f2s[i + 1]);
        err_f2.push_back((f2s[i] - r2).max_abs() / std::max(1e-300, r2.max_abs()));
    }
}

MmsResult mms_study(const RunConfig& cfg) {
    MmsResult result;
    const ModelParams params = cfg.make_model_params();
    const NormConfig norms = cfg.make_norm_config();
    const WindowPolicy policy = cfg.make_window_policy();
    GridPtr grid = cfg.make_grid_ptr();
    const MmsFunctions mms;
    const SourceFn source = mms.make_source(grid, params);

    const VectorField v0 = mms.v_star(grid, 0.0);
    const ScalarField phi0 = mms.phi_star(grid, 0.0);
    for (int h = 0; h <= cfg.mms_halvings; ++h) {
        const int steps = cfg.mms_steps0 << h;
        SolverConfig solver = cfg.make_solver_config();
        solver.dt = cfg.mms_T / steps;
        const ContinuationResult run =
            continuation_run(v0, phi0, cfg.mms_T, policy, params, solver, norms, cfg.picard_tol,
                             cfg.picard_max_iter, false, &source);
        const WindowTrajectory& last = run.windows.back();
        const VectorField v_end = last.v(last.n_steps());
        const ScalarField phi_end = last.phi(last.n_steps());
        result.dts.push_back(solver.dt);
        result.v_errors.push_back(lp_norm(v_end - mms.v_star(grid, cfg.mms_T), 2.0));
        result.phi_errors.push_back(lp_norm(phi_end - mms.phi_star(grid, cfg.mms_T), 2.0));
    }
    double vo = 0.0, po = 0.0;
    for (std::size_t i = 0; i + 1 < result.dts.size(); ++i) {
        vo += std::log2(result.v_errors[i] / result.v_errors[i + 1]);
        po += std::log2(result.phi_errors[i] / result.phi_errors[i + 1]);
    }
    result.v_order = vo / (result.dts.size() - 1);
    result.phi_order = po / (result.dts.size() - 1);

    result.spatial_grids = {32, 64, 128, 256};
    mms_spatial_study(params, result.spatial_grids, result.spatial_errors_f1,
                      result.spatial_errors_f2);
    return result;
}

namespace {

struct RunArtifacts {
    std::vector<StepRecord> records;
    std::vector<WindowSummary> windows;
    NormReport norms;
    std::vector<std::pair<int, std::pair<VectorField, ScalarField>>> snapshots;
};

RunArtifacts collect(const ContinuationResult& run, const RunConfig& cfg,
                     const ModelParams& params, const NormConfig& norms) {
    RunArtifacts art;
    auto push_record = [&](int step, double time, const VectorField& v, const ScalarField& phi,
                           const PicardReport* rep, double window_T) {
        StepRecord r;
        r.step = step;
        r.time = time;
        r.energy = energy(v, phi, params);
        r.mass = mass(phi);
        r.div_resid = div_residual(v);
        r.max_abs_phi = phi.max_abs();
        if (rep) {
            r.picard_iters = rep->iterates;
            r.contraction_ratio =
                rep->contraction_ratios.empty() ? 0.0 : rep->contraction_ratios.back();
        }
        r.window_T = window_T;
        art.records.push_back(r);
        art.norms.energy_series.push_back(r.energy);
        art.norms.mass_series.push_back(r.mass);
        art.norms.div_residual_series.push_back(r.div_resid);
        art.norms.max_abs_phi_series.push_back(r.max_abs_phi);
        if (step % cfg.snapshot_every == 0) art.snapshots.push_back({step, {v, phi}});
    };

    int step = 0;
    double t_start = 0.0;
    const WindowTrajectory& first = run.windows.front();
    push_record(0, 0.0, first.v(0), first.phi(0), nullptr, 0.0);
    for (std::size_t w = 0; w < run.windows.size(); ++w) {
        const WindowTrajectory& traj = run.windows[w];
        const PicardReport& rep = run.reports[w];
        for (int j = 1; j <= traj.n_steps(); ++j) {
            ++step;
            push_record(step, t_start + traj.time(j), traj.v(j), traj.phi(j), &rep, traj.T());
        }
        WindowSummary ws;
        ws.picard = rep;
        ws.window_T = traj.T();
        ws.t_start = t_start;
        const auto [vn, pn] = xt_norm(traj, norms);
        ws.v_norm = vn;
        ws.phi_norm = pn;
        const auto [y1, y2] = yt_norm(eval_F(traj, params, run.model_h), norms);
        ws.y1_norm = y1;
        ws.y2_norm = y2;
        art.windows.push_back(std::move(ws));
        t_start += traj.T();
    }
    // Ensure the final state is always snapshot.
    if (art.snapshots.empty() || art.snapshots.back().first != step) {
        const WindowTrajectory& last = run.windows.back();
        art.snapshots.push_back({step, {last.v(last.n_steps()), last.phi(last.n_steps())}});
    }
    art.norms.v_norm = art.windows.back().v_norm;
    art.norms.phi_norm = art.windows.back().phi_norm;
    art.norms.y1_norm = art.windows.back().y1_norm;
    art.norms.y2_norm = art.windows.back().y2_norm;
    return art;
}

void write_artifacts(const RunArtifacts& art, const RunConfig& cfg,
                     const std::string& extra_json) {
    const std::filesystem::path dir(cfg.out_dir);
    write_timeseries_csv(dir / "timeseries.csv", art.records);
    for (const auto& [step, fields] : art.snapshots) {
        const double t = art.records[step].time;
        write_snapshot(dir, step, fields.second, fields.first, t);
    }
    write_report_json(dir / "report.json", art.windows, art.norms, extra_json);
}

} // namespace

PresetResult run_preset(const RunConfig& cfg) {
    cfg.validate();
    ensure_writable(cfg.out_dir);

    PresetResult result;
    GridPtr grid = cfg.make_grid_ptr();
    const SolverConfig solver = cfg.make_solver_config();
    const NormConfig norms = cfg.make_norm_config();
    const WindowPolicy policy = cfg.make_window_policy();

    if (cfg.preset == "mms") {
        result.mms = mms_study(cfg);
        nlohmann::json j{{"dts", result.mms.dts},
                         {"v_errors", result.mms.v_errors},
                         {"phi_errors", result.mms.phi_errors},
                         {"v_order", result.mms.v_order},
                         {"phi_order", result.mms.phi_order},
                         {"spatial_grids", result.mms.spatial_grids},
                         {"spatial_errors_f1", result.mms.spatial_errors_f1},
                         {"spatial_errors_f2", result.mms.spatial_errors_f2}};
        write_report_json(std::filesystem::path(cfg.out_dir) / "report.json", {}, NormReport{},
                          j.dump());
        return result;
    }

    ModelParams params = cfg.make_model_params();
    VectorField v0(grid);
    ScalarField phi0(grid);
    bool compare_model_h = false;
    if (cfg.preset == "equilibrium") {
        phi0 = ScalarField(grid, 1.0);
    } else if (cfg.preset == "spinodal") {
        phi0 = spinodal_noise(grid, cfg.seed, cfg.noise, cfg.noise_max_mode, cfg.phi_mean);
    } else if (cfg.preset == "drop_relaxation") {
        phi0 = drop_profile(grid, cfg.drop_radius, cfg.epsilon);
    } else if (cfg.preset == "matched_density") {
        params = ModelParams(cfg.rho1, cfg.rho1, cfg.epsilon,
                             cfg.eta_law == "constant" ? ViscosityLaw::Constant
                                                       : ViscosityLaw::Tanh,
                             cfg.eta_base, cfg.eta_floor,
                             cfg.m_law == "constant" ? MobilityLaw::Constant : MobilityLaw::Tanh,
                             cfg.m_base, cfg.m_floor, cfg.eta0_min, cfg.m0_min);
        phi0 = spinodal_noise(grid, cfg.seed, cfg.noise, cfg.noise_max_mode, cfg.phi_mean);
        compare_model_h = true;
    } else {
        throw ConfigError("run_preset: unknown preset '" + cfg.preset + "'", -1, "run.preset");
    }

    const ContinuationResult run =
        continuation_run(v0, phi0, cfg.total_T, policy, params, solver, norms, cfg.picard_tol,
                         cfg.picard_max_iter);
    RunArtifacts art = collect(run, cfg, params, norms);
    result.records = art.records;
    result.windows = art.windows;

    std::string extra;
    if (compare_model_h) {
        const ContinuationResult run_h =
            continuation_run(v0, phi0, cfg.total_T, policy, params, solver, norms,
                             cfg.picard_tol, cfg.picard_max_iter, true);
        const WindowTrajectory& a = run.windows.back();
        const WindowTrajectory& b = run_h.windows.back();
        const ScalarField pa = a.phi(a.n_steps());
        const ScalarField pb = b.phi(b.n_steps());
        result.matched_density_max_rel_diff =
            (pa - pb).max_abs() / std::max(pa.max_abs(), 1e-300);
        extra = nlohmann::json{
            {"matched_density_max_rel_diff", result.matched_density_max_rel_diff}}.dump();
    }
    write_artifacts(art, cfg, extra);
    return result;
}

} // namespace nsch
