#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "nsch/diagnostics.hpp"
#include "nsch/model.hpp"
#include "nsch/picard.hpp"
#include "nsch/window_solver.hpp"

namespace nsch {

class ConfigError : public std::runtime_error {
  public:
    ConfigError(const std::string& what, int line = -1, std::string key = "")
        : std::runtime_error(what), line(line), key(std::move(key)) {}
    int line;
    std::string key;
};

/// Everything a run needs, in the line-oriented `key = value` format with
/// [grid], [model], [solver], [norms], [run] sections. Unknown keys are hard
/// errors; every field has a default (see README for the table).
struct RunConfig {
    // [grid]
    int nx = 64;
    int ny = 64;
    double lx = 6.283185307179586476925286766559; // 2*pi
    double ly = 6.283185307179586476925286766559;

    // [model]
    double rho1 = 1.0;
    double rho2 = 3.0;
    double epsilon = 0.1;
    std::string eta_law = "tanh";
    double eta_base = 1.0;
    double eta_floor = 0.1;
    std::string m_law = "constant";
    double m_base = 0.02;
    double m_floor = 0.005;
    double eta0_min = 1e-3;
    double m0_min = 1e-6;

    // [solver]
    double dt = 1e-3;
    double inner_tol = 1e-10;
    int inner_max_iter = 500;

    // [norms]
    double p = 4.5;
    std::string quadrature = "trapezoid";

    // [run]
    std::string preset = "spinodal";
    double total_T = 0.1;
    std::string out_dir = "out";
    std::uint64_t seed = 12345;
    int snapshot_every = 100;
    double picard_tol = 1e-8;
    int picard_max_iter = 30;
    int window_initial_steps = 16;
    int window_max_steps = 128;
    double noise = 0.05;
    int noise_max_mode = 8;
    double phi_mean = 0.0;
    double drop_radius = 1.5;
    double mms_T = 0.25;
    int mms_steps0 = 10; // coarsest step count of the dt study
    int mms_halvings = 3;

    ModelParams make_model_params() const;
    SolverConfig make_solver_config() const;
    NormConfig make_norm_config() const;
    WindowPolicy make_window_policy() const;
    GridPtr make_grid_ptr() const;

    /// Re-validates every constituent constraint; throws ConfigError.
    void validate() const;
};

/// Parses the `[section]` / `key = value` format. Lines starting with '#' or
/// ';' are comments. Unknown sections or keys, malformed lines, and
/// constraint violations raise ConfigError naming the line and key.
RunConfig parse_config(const std::string& text);

/// Applies a single `section.key=value` override.
void apply_override(RunConfig& cfg, const std::string& assignment);

} // namespace nsch
