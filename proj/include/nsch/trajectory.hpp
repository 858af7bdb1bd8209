#pragma once

#include <vector>

#include "nsch/field.hpp"
#include "nsch/model.hpp"

namespace nsch {

/// Time-indexed (v, phi) states over one window [0,T], uniform steps, with
/// the coefficients rho(phi0), eta(phi0), m(phi0) frozen at slot 0.
class WindowTrajectory {
  public:
    WindowTrajectory(const VectorField& v0, const ScalarField& phi0, double T, int n_steps,
                     const ModelParams& params);

    int n_steps() const { return n_steps_; }
    double T() const { return T_; }
    double dt() const { return T_ / n_steps_; }
    double time(int j) const { return dt() * j; }
    const Grid& grid() const { return phi_.front().grid(); }
    GridPtr grid_ptr() const { return phi_.front().grid_ptr(); }

    const VectorField& v(int j) const { return v_[j]; }
    const ScalarField& phi(int j) const { return phi_[j]; }

    /// Slot 0 stays fixed; only interior/terminal slots may be replaced.
    void set_state(int j, VectorField v, ScalarField phi);

    const ScalarField& rho0() const { return rho0_; }
    const ScalarField& eta0() const { return eta0_; }
    const ScalarField& m0() const { return m0_; }
    double rho0_mean() const { return rho0_mean_; }
    double eta0_mean() const { return eta0_mean_; }
    double m0_mean() const { return m0_mean_; }

  private:
    double T_;
    int n_steps_;
    std::vector<VectorField> v_;
    std::vector<ScalarField> phi_;
    ScalarField rho0_, eta0_, m0_;
    double rho0_mean_, eta0_mean_, m0_mean_;
};

/// Right-hand-side pair series (f_j, g_j) on the same time grid.
struct WindowRhs {
    double T = 0.0;
    std::vector<VectorField> f;
    std::vector<ScalarField> g;

    int n_steps() const { return static_cast<int>(f.size()) - 1; }
    double dt() const { return T / n_steps(); }
};

WindowRhs zero_rhs(GridPtr grid, double T, int n_steps);

/// Backward differences (x_j - x_{j-1})/dt for j >= 1; slot 0 copies slot 1.
std::vector<VectorField> time_derivative_v(const WindowTrajectory& traj);
std::vector<ScalarField> time_derivative_phi(const WindowTrajectory& traj);

} // namespace nsch
