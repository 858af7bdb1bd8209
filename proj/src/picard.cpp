#include "nsch/picard.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>

#include "nsch/operators.hpp"
#include "nsch/sampling.hpp"
#include "nsch/spectral_ops.hpp"

namespace nsch {

WindowTrajectory picard_map(const WindowTrajectory& traj, const ModelParams& params,
                            const SolverConfig& cfg, bool model_h, const WindowRhs* forcing) {
    WindowRhs rhs = eval_F(traj, params, model_h);
    if (forcing) {
        if (forcing->n_steps() != traj.n_steps())
            throw std::invalid_argument("picard_map: forcing time grid mismatch");
        for (int j = 0; j <= traj.n_steps(); ++j) {
            rhs.f[j] += forcing->f[j];
            rhs.g[j] += forcing->g[j];
        }
    }
    return solve_window(traj.v(0), traj.phi(0), rhs, params, cfg);
}

std::pair<WindowTrajectory, PicardReport>
run_fixed_point(const VectorField& v0, const ScalarField& phi0, double T, int n_steps,
                const ModelParams& params, const SolverConfig& cfg, const NormConfig& norms,
                double tol, int max_iter, bool model_h, const SourceFn* source, double t0) {
    if (phi0.max_abs() > 1.0 + 1e-12)
        std::cerr << "run_fixed_point: warning: max|phi0| = " << phi0.max_abs()
                  << " exceeds 1\n";
    const double dres = div_residual(v0);
    if (dres > 1e-8 * (1.0 + v0.max_abs()))
        throw std::invalid_argument("run_fixed_point: v0 is not divergence-free (|div| = " +
                                    std::to_string(dres) + ")");

    WindowTrajectory x(v0, phi0, T, n_steps, params);

    WindowRhs forcing;
    if (source) {
        forcing = zero_rhs(x.grid_ptr(), T, n_steps);
        for (int j = 0; j <= n_steps; ++j) {
            auto [f, g] = (*source)(t0 + x.time(j));
            forcing.f[j] = leray_project(f);
            forcing.g[j] = std::move(g);
        }
    }

    PicardReport report;
    int rising = 0;
    for (int k = 0; k < max_iter; ++k) {
        WindowTrajectory x_new = [&] {
            try {
                return picard_map(x, params, cfg, model_h, source ? &forcing : nullptr);
            } catch (const std::domain_error& e) {
                // Non-finite fields mean the iteration blew up at this T.
                throw WindowTooLargeError(
                    std::string("window too large: iterates diverged (") + e.what() +
                        "); reduce T",
                    report);
            }
        }();
        const double update = xt_distance(x_new, x, norms);
        ++report.iterates;
        report.update_norms.push_back(update);
        if (!std::isfinite(update))
            throw WindowTooLargeError("window too large: update norm not finite; reduce T",
                                      report);
        if (report.update_norms.size() >= 2) {
            const double prev = report.update_norms[report.update_norms.size() - 2];
            const double ratio = update / prev;
            report.contraction_ratios.push_back(ratio);
            rising = ratio >= 1.0 ? rising + 1 : 0;
        }
        const auto [vn, pn] = xt_norm(x_new, norms);
        if (update <= tol * (1.0 + vn + pn)) {
            report.converged = true;
            report.final_residual = update;
            return {std::move(x_new), report};
        }
        if (rising >= 3)
            throw WindowTooLargeError(
                "window too large: contraction ratio >= 1 for 3 consecutive iterations; "
                "reduce T",
                report);
        x = std::move(x_new);
    }
    report.final_residual = report.update_norms.back();
    throw WindowTooLargeError("window too large: no convergence within max_iter; reduce T",
                              report);
}

namespace {

// Smooth time envelopes vanishing at t=0. The flat-top shape reaches its
// amplitude early, which keeps the time-derivative share of the X_T norm low
// and probes the spatially-dominated directions.
double envelope(double s, int shape, double q, double theta) {
    switch (shape) {
        case 0: return s * (1.0 + 0.25 * std::sin(2.0 * std::numbers::pi * q * s + theta));
        case 1: return std::tanh(3.0 * s) / std::tanh(3.0);
        default: return s * s * (3.0 - 2.0 * s);
    }
}

struct DeviationProfile {
    ScalarField psi;
    VectorField chi;
    int shape_phi, shape_v;
    double q_phi, th_phi, q_v, th_v;
};

DeviationProfile draw_profile(GridPtr grid, std::mt19937_64& rng) {
    const int max_mode = std::min(grid->nx() / 3, 10);
    DeviationProfile d{random_band_limited(grid, rng, max_mode, 1.0, 1.2),
                       random_solenoidal(grid, rng, max_mode, 1.0, 1.2),
                       0, 0, 0, 0, 0, 0};
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_int_distribution<int> qdist(1, 2);
    std::uniform_int_distribution<int> sdist(0, 2);
    d.shape_phi = sdist(rng);
    d.shape_v = sdist(rng);
    d.q_phi = qdist(rng);
    d.th_phi = angle(rng);
    d.q_v = qdist(rng);
    d.th_v = angle(rng);
    return d;
}

// Zero-data trajectory built from one deviation profile, then rescaled onto
// the R-sphere; with zero initial data the X_T norm is exactly homogeneous.
WindowTrajectory build_sample(GridPtr grid, const DeviationProfile& d, double T, int n_steps,
                              double R, const ModelParams& params, const NormConfig& norms) {
    WindowTrajectory x{VectorField(grid), ScalarField(grid), T, n_steps, params};
    for (int j = 1; j <= n_steps; ++j) {
        const double s = static_cast<double>(j) / n_steps;
        x.set_state(j, envelope(s, d.shape_v, d.q_v, d.th_v) * d.chi,
                    envelope(s, d.shape_phi, d.q_phi, d.th_phi) * d.psi);
    }
    const auto [vn, pn] = xt_norm(x, norms);
    const double scale = R / (vn + pn);
    for (int j = 1; j <= n_steps; ++j)
        x.set_state(j, scale * x.v(j), scale * x.phi(j));
    return x;
}

} // namespace

LipschitzStats estimate_lipschitz(GridPtr grid, double T, int n_steps, double R,
                                  const ModelParams& params, const NormConfig& norms,
                                  int n_samples, std::uint64_t seed) {
    if (n_samples < 8) throw std::invalid_argument("estimate_lipschitz: need n_samples >= 8");
    if (!(R > 0.0)) throw std::invalid_argument("estimate_lipschitz: need R > 0");
    std::mt19937_64 rng(seed);
    LipschitzStats stats;
    stats.ratios.reserve(n_samples);
    while (static_cast<int>(stats.ratios.size()) < n_samples) {
        const DeviationProfile d1 = draw_profile(grid, rng);
        const DeviationProfile d2 = draw_profile(grid, rng);
        // Alternate independent pairs (large separations) with perturbative
        // pairs probing the local slope at the ball boundary.
        const bool perturbative = stats.ratios.size() % 2 == 1;
        const WindowTrajectory x1 =
            build_sample(grid, d1, T, n_steps, perturbative ? 0.98 * R : R, params, norms);
        WindowTrajectory x2 =
            perturbative ? build_sample(grid, d2, T, n_steps, 0.02 * R, params, norms)
                         : build_sample(grid, d2, T, n_steps, R, params, norms);
        if (perturbative) {
            for (int j = 1; j <= n_steps; ++j)
                x2.set_state(j, x1.v(j) + x2.v(j), x1.phi(j) + x2.phi(j));
        }
        const double dist = xt_distance(x1, x2, norms);
        if (dist < 1e-14) continue; // degenerate pair, redraw
        const double fdist = yt_distance(eval_F(x1, params), eval_F(x2, params), norms);
        stats.ratios.push_back(fdist / dist);
    }
    std::vector<double> sorted = stats.ratios;
    std::sort(sorted.begin(), sorted.end());
    stats.max_ratio = sorted.back();
    stats.median_ratio = sorted[sorted.size() / 2];
    return stats;
}

double probe_linv_norm(GridPtr grid, const ScalarField& phi0, double T, int n_steps,
                       const ModelParams& params, const SolverConfig& cfg,
                       const NormConfig& norms, int n_samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    // Coefficients are frozen at phi0 via the trajectory the solver builds;
    // the probe itself runs from zero data so the solve is linear in y.
    const VectorField v0(grid);
    double worst = 0.0;
    for (int s = 0; s < n_samples; ++s) {
        WindowRhs rhs = zero_rhs(grid, T, n_steps);
        // Alternate smooth and rough spectra, slow and fast time modulation.
        const int max_mode = (s % 2 == 0) ? 6 : grid->nx() / 3;
        const double decay = (s % 2 == 0) ? 1.0 : 0.0;
        const double omega = (s % 4 < 2) ? 2.0 : 0.5 * std::numbers::pi * n_steps;
        const VectorField fprof = random_solenoidal(grid, rng, max_mode, 1.0, decay);
        const ScalarField gprof = random_band_limited(grid, rng, max_mode, 1.0, decay);
        const double qf = angle(rng), qg = angle(rng);
        for (int j = 0; j <= n_steps; ++j) {
            const double t = static_cast<double>(j) / n_steps;
            rhs.f[j] = std::cos(qf + omega * t) * fprof;
            rhs.g[j] = std::cos(qg + omega * t) * gprof;
        }
        // Solve with coefficients frozen at phi0 but zero initial data: build
        // the trajectory at phi0 to freeze, then overwrite the datum.
        WindowTrajectory frozen(v0, phi0, T, n_steps, params);
        const WindowRhs projected = [&] {
            WindowRhs r = rhs;
            for (auto& f : r.f) f = leray_project(f);
            return r;
        }();
        WindowTrajectory x = [&] {
            // zero-data solve with the same frozen coefficients
            WindowTrajectory z(VectorField(grid), ScalarField(grid, 0.0), T, n_steps, params);
            const double dt = z.dt();
            for (int j = 1; j <= n_steps; ++j) {
                VectorField vj = stokes_step(z.v(j - 1), projected.f[j], dt, frozen.rho0(),
                                             frozen.eta0(), frozen.rho0_mean(),
                                             frozen.eta0_mean(), cfg);
                ScalarField pj = ch_step(z.phi(j - 1), projected.g[j], dt, params.epsilon(),
                                         frozen.m0(), frozen.m0_mean(), cfg);
                z.set_state(j, std::move(vj), std::move(pj));
            }
            return z;
        }();
        const auto [vn, pn] = xt_norm(x, norms);
        const auto [y1, y2] = yt_norm(projected, norms);
        const double ynorm = y1 + y2;
        if (ynorm > 1e-14) worst = std::max(worst, (vn + pn) / ynorm);
    }
    return worst;
}

ContinuationResult continuation_run(const VectorField& v0, const ScalarField& phi0,
                                    double total_T, const WindowPolicy& policy,
                                    const ModelParams& params, const SolverConfig& cfg,
                                    const NormConfig& norms, double tol, int max_iter,
                                    bool model_h, const SourceFn* source) {
    if (!(total_T > 0.0)) throw std::invalid_argument("continuation_run: total_T must be > 0");
    cfg.validate();
    const double dt = cfg.dt;
    const int total_steps = static_cast<int>(std::llround(total_T / dt));
    if (total_steps < 2)
        throw std::invalid_argument("continuation_run: total_T shorter than two steps");

    ContinuationResult result;
    result.model_h = model_h;
    VectorField v = v0;
    ScalarField phi = phi0;
    int done = 0;
    int window_steps = std::max(2, std::min(policy.initial_steps, total_steps));
    int easy_streak = 0;
    while (done < total_steps) {
        const int remaining = total_steps - done;
        int n = std::min(window_steps, remaining);
        // Never leave a trailing single step: a window needs >= 2 steps.
        if (remaining - n == 1) n = (n >= 3) ? n - 1 : remaining;
        const double T_w = n * dt;
        try {
            auto [traj, report] = run_fixed_point(v, phi, T_w, n, params, cfg, norms, tol,
                                                  max_iter, model_h, source, done * dt);
            const double final_ratio =
                report.contraction_ratios.empty() ? 0.0 : report.contraction_ratios.back();
            if (final_ratio >= policy.accept_ratio)
                throw WindowTooLargeError("window contraction ratio " +
                                              std::to_string(final_ratio) +
                                              " above accept_ratio",
                                          report);
            v = traj.v(traj.n_steps());
            phi = traj.phi(traj.n_steps());
            done += n;
            const bool easy =
                report.iterates <= policy.easy_iters && final_ratio < policy.easy_ratio;
            easy_streak = easy ? easy_streak + 1 : 0;
            result.windows.push_back(std::move(traj));
            result.reports.push_back(std::move(report));
            if (easy_streak >= 2 && 2 * window_steps <= policy.max_steps) {
                window_steps *= 2;
                easy_streak = 0;
            }
        } catch (const WindowTooLargeError& e) {
            if (n <= 2)
                throw ContinuationError(
                    std::string("continuation_run: window underflow below dt (") + e.what() +
                        ")",
                    done * dt, e.report);
            window_steps = std::max(2, n / 2);
            easy_streak = 0;
        }
    }
    return result;
}

} // namespace nsch
