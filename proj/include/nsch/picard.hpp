#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "nsch/diagnostics.hpp"
#include "nsch/window_solver.hpp"

namespace nsch {

struct PicardReport {
    int iterates = 0;
    std::vector<double> update_norms;       // ||x_{k+1} - x_k||_{X_T}
    std::vector<double> contraction_ratios; // successive quotients, from iteration 2 on
    bool converged = false;
    double final_residual = 0.0; // X_T distance of the last update
};

/// The fixed-point window cannot contract at this length; shrink T.
class WindowTooLargeError : public std::runtime_error {
  public:
    WindowTooLargeError(const std::string& what, PicardReport report)
        : std::runtime_error(what), report(std::move(report)) {}
    PicardReport report;
};

/// External volume source (f, g) as a function of absolute time; used by the
/// manufactured-solution study.
using SourceFn = std::function<std::pair<VectorField, ScalarField>(double)>;

/// One application of x -> L^{-1}(F(x) + forcing) with the input's initial
/// data and frozen coefficients. The first component of F is projected before
/// the solve; output slot 0 equals input slot 0 exactly.
WindowTrajectory picard_map(const WindowTrajectory& traj, const ModelParams& params,
                            const SolverConfig& cfg, bool model_h = false,
                            const WindowRhs* forcing = nullptr);

/// Banach iteration from the constant-in-time extension of (v0, phi0) until
///   ||x_{k+1} - x_k||_{X_T} <= tol (1 + ||x_{k+1}||_{X_T}).
/// Throws WindowTooLargeError when max_iter is exhausted, the contraction
/// ratio stays >= 1 for 3 consecutive iterations, or iterates blow up.
/// t0 is the absolute time of slot 0, used only to evaluate `source`.
std::pair<WindowTrajectory, PicardReport>
run_fixed_point(const VectorField& v0, const ScalarField& phi0, double T, int n_steps,
                const ModelParams& params, const SolverConfig& cfg, const NormConfig& norms,
                double tol, int max_iter, bool model_h = false,
                const SourceFn* source = nullptr, double t0 = 0.0);

struct LipschitzStats {
    double max_ratio = 0.0;
    double median_ratio = 0.0;
    std::vector<double> ratios;
};

/// Measures ||F(x1)-F(x2)||_{Y_T} / ||x1-x2||_{X_T} over seeded random
/// trajectory pairs sharing zero initial data, each rescaled onto the R-ball.
LipschitzStats estimate_lipschitz(GridPtr grid, double T, int n_steps, double R,
                                  const ModelParams& params, const NormConfig& norms,
                                  int n_samples, std::uint64_t seed);

/// Operator-norm probe for the zero-data window solve: max over seeded rhs
/// samples of ||L^{-1} y||_{X_T} / ||y||_{Y_T}, with coefficients frozen at
/// phi0.
double probe_linv_norm(GridPtr grid, const ScalarField& phi0, double T, int n_steps,
                       const ModelParams& params, const SolverConfig& cfg,
                       const NormConfig& norms, int n_samples, std::uint64_t seed);

struct WindowPolicy {
    int initial_steps = 16; // first window length in units of dt
    int max_steps = 128;
    double easy_ratio = 0.25; // final contraction ratio counting as "easy"
    int easy_iters = 15;
    double accept_ratio = 0.5; // accepted windows must contract below this
};

struct ContinuationResult {
    std::vector<WindowTrajectory> windows;
    std::vector<PicardReport> reports;
    bool model_h = false;
};

class ContinuationError : public std::runtime_error {
  public:
    ContinuationError(const std::string& what, double t_reached, PicardReport last_report)
        : std::runtime_error(what), t_reached(t_reached), last_report(std::move(last_report)) {}
    double t_reached;
    PicardReport last_report;
};

/// Window-by-window continuation with re-frozen coefficients at each restart.
/// Windows halve on failure (and on contraction ratios above accept_ratio)
/// and may double after two consecutive easy windows.
ContinuationResult continuation_run(const VectorField& v0, const ScalarField& phi0,
                                    double total_T, const WindowPolicy& policy,
                                    const ModelParams& params, const SolverConfig& cfg,
                                    const NormConfig& norms, double tol, int max_iter,
                                    bool model_h = false, const SourceFn* source = nullptr);

} // namespace nsch
