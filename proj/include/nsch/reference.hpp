#pragma once

#include "nsch/model.hpp"
#include "nsch/window_solver.hpp"

namespace nsch {

/// Monolithic semi-implicit stepper for the same system, used as an
/// independent cross-check of the windowed fixed-point solver. Nonlinear
/// terms are explicit at the old time level; the stiff linear parts are
/// stabilized by constant-coefficient implicit shifts applied per Fourier
/// mode; the variable-density mass operator is inverted with CG.
struct ReferenceState {
    VectorField v;
    ScalarField phi;
};

ReferenceState reference_step(const ReferenceState& state, double dt, const ModelParams& params,
                              const SolverConfig& cfg);

ReferenceState reference_run(const VectorField& v0, const ScalarField& phi0, double total_T,
                             int n_steps, const ModelParams& params, const SolverConfig& cfg);

} // namespace nsch
