#pragma once

#include "nsch/trajectory.hpp"

namespace nsch {

struct NormConfig; // diagnostics.hpp

/// First (momentum) component of the nonlinear remainder, not projected:
///   (rho0 - rho(phi)) dtv + div(2(eta(phi) - eta0) Dv)
///   - eps*lap(phi)*grad(phi) - ((rho(phi) v + c_rho m(phi) grad(mu)) . grad) v
/// with c_rho = (rho1 - rho2)/2 and mu = W'(phi)/eps - eps*lap(phi).
/// Every pointwise product is dealiased. Terms with an exactly-zero matched-
/// density prefactor are skipped so they leave no round-off residue.
VectorField eval_F1(const VectorField& v, const VectorField& dtv, const ScalarField& phi,
                    const ModelParams& params, const ScalarField& rho0, const ScalarField& eta0);

/// Matched-density (Model H) specialization: the density is constant and the
/// diffusive mass-flux convection term is absent by construction.
VectorField eval_F1_model_h(const VectorField& v, const ScalarField& phi,
                            const ModelParams& params, const ScalarField& eta0);

/// Second (phase) component:
///   -grad(phi).v + div(m(phi) grad(W'(phi)))/eps
///   + eps*m0*bilap(phi) - eps*div(m(phi) grad(lap(phi)))
/// For constant mobility the last two terms cancel to round-off.
ScalarField eval_F2(const VectorField& v, const ScalarField& phi, const ModelParams& params,
                    const ScalarField& m0);

/// F on a whole trajectory: slot j gets (P_sigma F1, F2) evaluated at state j,
/// with dtv the backward-difference series of the trajectory itself.
WindowRhs eval_F(const WindowTrajectory& traj, const ModelParams& params,
                 bool model_h = false);

/// The frozen-coefficient linear operator applied slotwise with the same
/// backward differences the window solver uses:
///   (P_sigma(rho0 dtv) - P_sigma(div(2 eta0 Dv)), dtphi + eps*m0*bilap(phi)).
WindowRhs apply_L(const WindowTrajectory& traj, const ModelParams& params);

/// Discrete Y_T norm of L(traj) - rhs over slots 1..N (slot 0 carries no
/// equation). Hard error on mismatched time grids.
double apply_L_residual(const WindowTrajectory& traj, const WindowRhs& rhs,
                        const ModelParams& params, const NormConfig& norms);

/// Symmetric gradient entries of a velocity field: (dxu, dyv, (dyu+dxv)/2).
struct SymTensor {
    ScalarField s11, s22, s12;
};
SymTensor sym_gradient(const VectorField& v);
VectorField tensor_divergence(const SymTensor& s);

} // namespace nsch
