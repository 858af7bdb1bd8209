#include "nsch/trajectory.hpp"

#include <stdexcept>

#include "nsch/spectral_ops.hpp"

namespace nsch {

WindowTrajectory::WindowTrajectory(const VectorField& v0, const ScalarField& phi0, double T,
                                   int n_steps, const ModelParams& params)
    : T_(T), n_steps_(n_steps) {
    if (n_steps_ < 2) throw std::invalid_argument("WindowTrajectory: need n_steps >= 2");
    if (!(T_ > 0.0)) throw std::invalid_argument("WindowTrajectory: need T > 0");
    require_same_grid(v0.grid(), phi0.grid(), "WindowTrajectory");
    require_finite(v0, "WindowTrajectory");
    require_finite(phi0, "WindowTrajectory");

    v_.assign(n_steps_ + 1, v0);
    phi_.assign(n_steps_ + 1, phi0);
    rho0_ = coeff_eval(Coefficient::Rho, phi0, params);
    eta0_ = coeff_eval(Coefficient::Eta, phi0, params);
    m0_ = coeff_eval(Coefficient::M, phi0, params);
    rho0_mean_ = rho0_.mean();
    eta0_mean_ = eta0_.mean();
    m0_mean_ = m0_.mean();
}

void WindowTrajectory::set_state(int j, VectorField v, ScalarField phi) {
    if (j < 1 || j > n_steps_)
        throw std::invalid_argument("WindowTrajectory::set_state: slot 0 is the initial datum");
    require_same_grid(v.grid(), grid(), "WindowTrajectory::set_state");
    require_same_grid(phi.grid(), grid(), "WindowTrajectory::set_state");
    v_[j] = std::move(v);
    phi_[j] = std::move(phi);
}

WindowRhs zero_rhs(GridPtr grid, double T, int n_steps) {
    WindowRhs rhs;
    rhs.T = T;
    rhs.f.assign(n_steps + 1, VectorField(grid));
    rhs.g.assign(n_steps + 1, ScalarField(grid));
    return rhs;
}

std::vector<VectorField> time_derivative_v(const WindowTrajectory& traj) {
    const int n = traj.n_steps();
    const double inv_dt = 1.0 / traj.dt();
    std::vector<VectorField> out;
    out.reserve(n + 1);
    out.emplace_back(traj.grid_ptr()); // placeholder, replaced by slot 1 below
    for (int j = 1; j <= n; ++j) out.push_back(inv_dt * (traj.v(j) - traj.v(j - 1)));
    out[0] = out[1];
    return out;
}

std::vector<ScalarField> time_derivative_phi(const WindowTrajectory& traj) {
    const int n = traj.n_steps();
    const double inv_dt = 1.0 / traj.dt();
    std::vector<ScalarField> out;
    out.reserve(n + 1);
    out.emplace_back(traj.grid_ptr());
    for (int j = 1; j <= n; ++j) out.push_back(inv_dt * (traj.phi(j) - traj.phi(j - 1)));
    out[0] = out[1];
    return out;
}

} // namespace nsch
