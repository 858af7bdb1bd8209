#pragma once

#include "nsch/linsolve.hpp"
#include "nsch/trajectory.hpp"

namespace nsch {

struct SolverConfig {
    double dt = 1e-3;
    double inner_tol = 1e-10;
    int inner_max_iter = 500;

    void validate() const;
};

/// One implicit-Euler step of the variable-density Stokes part:
///   P_sigma(rho0 (v_n - v_prev)/dt) - P_sigma(div(2 eta0 D v_n)) = f
/// solved by preconditioned CG; the preconditioner is the mean-coefficient
/// operator inverted per Fourier mode. f and v_prev must be solenoidal.
VectorField stokes_step(const VectorField& v_prev, const VectorField& f, double dt,
                        const ScalarField& rho0, const ScalarField& eta0, double rho0_mean,
                        double eta0_mean, const SolverConfig& cfg);

/// One implicit-Euler step of the fourth-order parabolic part:
///   (phi_n - phi_prev)/dt + eps m0 bilap(phi_n) = g.
/// Solved in the 1/m0-weighted form, which is SPD; the stopping criterion is
/// the residual of the equation as written above.
ScalarField ch_step(const ScalarField& phi_prev, const ScalarField& g, double dt, double eps,
                    const ScalarField& m0, double m0_mean, const SolverConfig& cfg);

/// Discrete inverse of the frozen-coefficient operator: marches the two
/// decoupled steps over the window. Slot 0 of the result holds (v0, phi0);
/// rhs slot j drives the step onto time level j.
WindowTrajectory solve_window(const VectorField& v0, const ScalarField& phi0,
                              const WindowRhs& rhs, const ModelParams& params,
                              const SolverConfig& cfg);

/// Steady variable-viscosity solve  -P_sigma(div(2 eta0 D u)) = P_sigma(w)
/// in the mean-free solenoidal gauge; used for refinement-stability checks.
VectorField steady_stokes_solve(const VectorField& w, const ScalarField& eta0, double eta0_mean,
                                const SolverConfig& cfg);

} // namespace nsch
