#include "nsch/window_solver.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "nsch/operators.hpp"
#include "nsch/spectral_ops.hpp"

namespace nsch {

void SolverConfig::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("SolverConfig: dt must be positive");
    if (!(inner_tol > 0.0 && inner_tol < 1.0))
        throw std::invalid_argument("SolverConfig: inner_tol must be in (0,1)");
    if (inner_max_iter < 1)
        throw std::invalid_argument("SolverConfig: inner_max_iter must be >= 1");
}

namespace {

std::vector<double> pack(const VectorField& v) {
    std::vector<double> out;
    out.reserve(2 * v.x().values().size());
    out.insert(out.end(), v.x().values().begin(), v.x().values().end());
    out.insert(out.end(), v.y().values().begin(), v.y().values().end());
    return out;
}

VectorField unpack(GridPtr grid, const std::vector<double>& x) {
    const std::size_t n = grid->size();
    return VectorField(ScalarField(grid, std::vector<double>(x.begin(), x.begin() + n)),
                       ScalarField(grid, std::vector<double>(x.begin() + n, x.end())));
}

// Per-mode scalar multiplier applied to both velocity components.
std::vector<double> mode_scale(GridPtr grid, const std::vector<double>& x,
                               const std::function<double(double)>& factor_of_k2) {
    const Grid& g = *grid;
    VectorField v = unpack(grid, x);
    Spectrum sx = to_spectrum(v.x());
    Spectrum sy = to_spectrum(v.y());
    const int nxh = g.nx() / 2 + 1;
    std::size_t n = 0;
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < nxh; ++i, ++n) {
            const double k2 = g.kx()[i] * g.kx()[i] + g.ky()[j] * g.ky()[j];
            const double f = factor_of_k2(k2);
            sx[n] *= f;
            sy[n] *= f;
        }
    return pack(VectorField(from_spectrum(grid, sx), from_spectrum(grid, sy)));
}

} // namespace

VectorField stokes_step(const VectorField& v_prev, const VectorField& f, double dt,
                        const ScalarField& rho0, const ScalarField& eta0, double rho0_mean,
                        double eta0_mean, const SolverConfig& cfg) {
    cfg.validate();
    require_same_grid(v_prev.grid(), f.grid(), "stokes_step");
    require_same_grid(v_prev.grid(), rho0.grid(), "stokes_step");
    require_finite(v_prev, "stokes_step");
    require_finite(f, "stokes_step");
    GridPtr grid = v_prev.grid_ptr();
    const double inv_dt = 1.0 / dt;

    auto apply = [&](const std::vector<double>& x) {
        const VectorField v = unpack(grid, x);
        VectorField mass(hadamard(rho0, v.x()), hadamard(rho0, v.y()));
        const SymTensor Dv = sym_gradient(v);
        const SymTensor S{2.0 * hadamard(eta0, Dv.s11), 2.0 * hadamard(eta0, Dv.s22),
                          2.0 * hadamard(eta0, Dv.s12)};
        return pack(leray_project(inv_dt * mass - tensor_divergence(S)));
    };
    auto precond = [&](const std::vector<double>& r) {
        return mode_scale(grid, r, [&](double k2) {
            return 1.0 / (rho0_mean * inv_dt + eta0_mean * k2);
        });
    };

    const VectorField mass_prev(hadamard(rho0, v_prev.x()), hadamard(rho0, v_prev.y()));
    const std::vector<double> b = pack(f + inv_dt * leray_project(mass_prev));

    PcgOptions opts;
    opts.tol = cfg.inner_tol;
    opts.max_iter = cfg.inner_max_iter;
    PcgResult res = pcg_solve(apply, precond, b, pack(v_prev), opts);
    return unpack(grid, res.x);
}

ScalarField ch_step(const ScalarField& phi_prev, const ScalarField& g, double dt, double eps,
                    const ScalarField& m0, double m0_mean, const SolverConfig& cfg) {
    cfg.validate();
    require_same_grid(phi_prev.grid(), g.grid(), "ch_step");
    require_same_grid(phi_prev.grid(), m0.grid(), "ch_step");
    require_finite(phi_prev, "ch_step");
    require_finite(g, "ch_step");
    GridPtr grid = phi_prev.grid_ptr();
    const double inv_dt = 1.0 / dt;

    // Solved in the 1/m0-weighted form: phi/(dt m0) + eps bilap(phi) = b/m0,
    // which is SPD; the stopping residual is weighted back by m0 so the
    // guarantee applies to the equation as stated.
    std::vector<double> inv_m0(m0.values().size());
    for (std::size_t n = 0; n < inv_m0.size(); ++n) inv_m0[n] = 1.0 / m0.values()[n];

    auto apply = [&](const std::vector<double>& x) {
        ScalarField phi(grid, x);
        ScalarField out = bilaplacian(phi);
        out *= eps;
        auto& v = out.values();
        for (std::size_t n = 0; n < v.size(); ++n) v[n] += inv_dt * inv_m0[n] * x[n];
        return v;
    };
    auto precond = [&](const std::vector<double>& r) {
        ScalarField rf(grid, r);
        Spectrum s = to_spectrum(rf);
        const Grid& gr = *grid;
        const int nxh = gr.nx() / 2 + 1;
        std::size_t n = 0;
        for (int j = 0; j < gr.ny(); ++j)
            for (int i = 0; i < nxh; ++i, ++n) {
                const double k2 = gr.kx()[i] * gr.kx()[i] + gr.ky()[j] * gr.ky()[j];
                s[n] /= inv_dt / m0_mean + eps * k2 * k2;
            }
        return fft_backward(gr, s);
    };

    const ScalarField b_orig = g + inv_dt * phi_prev;
    std::vector<double> b(b_orig.values().size());
    for (std::size_t n = 0; n < b.size(); ++n) b[n] = b_orig.values()[n] * inv_m0[n];

    double b_scale = 0.0;
    for (double v : b_orig.values()) b_scale += v * v;
    b_scale = std::sqrt(b_scale);

    PcgOptions opts;
    opts.tol = cfg.inner_tol;
    opts.max_iter = cfg.inner_max_iter;
    opts.residual_weight = m0.values();
    opts.rhs_scale = b_scale;
    PcgResult res = pcg_solve(apply, precond, b, phi_prev.values(), opts);
    return ScalarField(grid, std::move(res.x));
}

WindowTrajectory solve_window(const VectorField& v0, const ScalarField& phi0,
                              const WindowRhs& rhs, const ModelParams& params,
                              const SolverConfig& cfg) {
    WindowTrajectory traj(v0, phi0, rhs.T, rhs.n_steps(), params);
    const double dt = traj.dt();
    for (int j = 1; j <= traj.n_steps(); ++j) {
        try {
            VectorField vj = stokes_step(traj.v(j - 1), rhs.f[j], dt, traj.rho0(), traj.eta0(),
                                         traj.rho0_mean(), traj.eta0_mean(), cfg);
            ScalarField pj = ch_step(traj.phi(j - 1), rhs.g[j], dt, params.epsilon(), traj.m0(),
                                     traj.m0_mean(), cfg);
            traj.set_state(j, std::move(vj), std::move(pj));
        } catch (const SolveError& e) {
            throw SolveError("solve_window: step " + std::to_string(j) + " failed: " + e.what(),
                             e.residual_history, j);
        }
    }
    return traj;
}

VectorField steady_stokes_solve(const VectorField& w, const ScalarField& eta0, double eta0_mean,
                                const SolverConfig& cfg) {
    cfg.validate();
    require_finite(w, "steady_stokes_solve");
    GridPtr grid = w.grid_ptr();

    auto remove_mean = [](VectorField v) {
        const double mx = v.x().mean();
        const double my = v.y().mean();
        for (double& a : v.x().values()) a -= mx;
        for (double& a : v.y().values()) a -= my;
        return v;
    };

    auto apply = [&](const std::vector<double>& x) {
        const VectorField u = unpack(grid, x);
        const SymTensor Du = sym_gradient(u);
        const SymTensor S{2.0 * hadamard(eta0, Du.s11), 2.0 * hadamard(eta0, Du.s22),
                          2.0 * hadamard(eta0, Du.s12)};
        return pack(leray_project(-1.0 * tensor_divergence(S)));
    };
    auto precond = [&](const std::vector<double>& r) {
        return mode_scale(grid, r,
                          [&](double k2) { return k2 > 0.0 ? 1.0 / (eta0_mean * k2) : 0.0; });
    };

    const std::vector<double> b = pack(remove_mean(leray_project(w)));
    PcgOptions opts;
    opts.tol = cfg.inner_tol;
    opts.max_iter = cfg.inner_max_iter;
    PcgResult res = pcg_solve(apply, precond, b, {}, opts);
    return unpack(grid, res.x);
}

} // namespace nsch
