#pragma once

#include <cmath>

#include "nsch/config.hpp"
#include "nsch/output.hpp"
#include "nsch/reference.hpp"

namespace nsch {

/// Smoothed circular interface profile: +1 inside radius, -1 outside, tanh
/// transition of width ~eps, periodic distance to the domain center.
ScalarField drop_profile(GridPtr grid, double radius, double eps);

/// Closed-form manufactured solution
///   v*(x,t) = a(t) (sin y, 0) + b(t) (0, sin x),  phi*(x,t) = c(t) cos x
/// with its exact time derivatives and the volume source that turns it into
/// a solution of the discrete system (spatial terms assembled with the
/// discrete operators, coefficients frozen at phi*(0)).
struct MmsFunctions {
    double a0 = 0.08, b0 = 0.06, c0 = 0.10;
    double a(double t) const { return a0 * std::exp(-t); }
    double da(double t) const { return -a(t); }
    double b(double t) const { return b0 * std::exp(-0.7 * t); }
    double db(double t) const { return -0.7 * b(t); }
    double c(double t) const { return c0 * std::exp(-t); }
    double dc(double t) const { return -c(t); }

    VectorField v_star(GridPtr grid, double t) const;
    VectorField dtv_star(GridPtr grid, double t) const;
    ScalarField phi_star(GridPtr grid, double t) const;
    ScalarField dtphi_star(GridPtr grid, double t) const;

    SourceFn make_source(GridPtr grid, const ModelParams& params) const;
};

struct MmsResult {
    std::vector<double> dts;
    std::vector<double> v_errors;
    std::vector<double> phi_errors;
    double v_order = 0.0;
    double phi_order = 0.0;
    std::vector<int> spatial_grids;
    std::vector<double> spatial_errors_f1;
    std::vector<double> spatial_errors_f2;
};

/// dt-halving error table for the manufactured run plus the spatial
/// refinement study of the nonlinear assembly on analytic fields.
MmsResult mms_study(const RunConfig& cfg);

/// Spatial-only refinement study (exposed for the verification suite).
void mms_spatial_study(const ModelParams& params, const std::vector<int>& grids,
                       std::vector<double>& err_f1, std::vector<double>& err_f2);

struct PresetResult {
    std::vector<StepRecord> records;
    std::vector<WindowSummary> windows;
    double matched_density_max_rel_diff = -1.0; // matched_density preset only
    MmsResult mms;                              // mms preset only
};

/// Executes the named preset from cfg.preset, writing timeseries.csv,
/// snapshots and report.json into cfg.out_dir. Output writability is checked
/// before any simulation work.
PresetResult run_preset(const RunConfig& cfg);

} // namespace nsch
