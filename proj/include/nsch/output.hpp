#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "nsch/diagnostics.hpp"
#include "nsch/picard.hpp"

namespace nsch {

struct StepRecord {
    int step = 0;
    double time = 0.0;
    double energy = 0.0;
    double mass = 0.0;
    double div_resid = 0.0;
    double max_abs_phi = 0.0;
    int picard_iters = 0;
    double contraction_ratio = 0.0;
    double window_T = 0.0;
};

struct WindowSummary {
    PicardReport picard;
    double window_T = 0.0;
    double t_start = 0.0;
    double v_norm = 0.0;
    double phi_norm = 0.0;
    double y1_norm = 0.0;
    double y2_norm = 0.0;
};

/// Creates the directory and verifies it is writable with a probe file;
/// throws std::runtime_error otherwise. Called before any simulation work.
void ensure_writable(const std::filesystem::path& dir);

/// Header: step,time,energy,mass,div_resid,max_abs_phi,picard_iters,
/// contraction_ratio,window_T — one row per record.
void write_timeseries_csv(const std::filesystem::path& path,
                          const std::vector<StepRecord>& records);

/// Raw little-endian float64, row-major (y outer, x inner), one file per
/// component plus a NNNNNN.meta.json sidecar with nx, ny, lx, ly, time.
void write_snapshot(const std::filesystem::path& dir, int index, const ScalarField& phi,
                    const VectorField& v, double time);

std::vector<double> read_raw_f64(const std::filesystem::path& path);

void write_report_json(const std::filesystem::path& path,
                       const std::vector<WindowSummary>& windows, const NormReport& norms,
                       const std::string& extra_json = "");

void write_error_json(const std::filesystem::path& dir, const std::string& message,
                      const std::string& where);

} // namespace nsch
