#include "nsch/reference.hpp"

#include <algorithm>
#include <cmath>

#include "nsch/operators.hpp"
#include "nsch/spectral_ops.hpp"

namespace nsch {

namespace {

ScalarField prod(const ScalarField& a, const ScalarField& b) { return dealias(hadamard(a, b)); }

VectorField scale_by(const ScalarField& a, const VectorField& v) {
    return VectorField(prod(a, v.x()), prod(a, v.y()));
}

// Stabilized explicit increment: x += dt * (I + dt*c*Op)^{-1} rhs with Op the
// constant-coefficient stiff operator (|k|^2 or |k|^4 per mode).
ScalarField stabilized_increment(const ScalarField& rhs, double dt, double coeff, int power) {
    const Grid& g = rhs.grid();
    Spectrum s = to_spectrum(rhs);
    const int nxh = g.nx() / 2 + 1;
    std::size_t n = 0;
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < nxh; ++i, ++n) {
            const double k2 = g.kx()[i] * g.kx()[i] + g.ky()[j] * g.ky()[j];
            const double kp = power == 4 ? k2 * k2 : k2;
            s[n] *= dt / (1.0 + dt * coeff * kp);
        }
    return from_spectrum(rhs.grid_ptr(), s);
}

} // namespace

ReferenceState reference_step(const ReferenceState& state, double dt, const ModelParams& params,
                              const SolverConfig& cfg) {
    GridPtr grid = state.v.grid_ptr();
    const double eps = params.epsilon();
    const VectorField vd = dealias(state.v);
    const ScalarField phid = dealias(state.phi);
    const ScalarField rho = coeff_eval(Coefficient::Rho, state.phi, params);
    const ScalarField rhod = dealias(rho);
    const ScalarField etad = dealias(coeff_eval(Coefficient::Eta, state.phi, params));
    const ScalarField md = dealias(coeff_eval(Coefficient::M, state.phi, params));
    const ScalarField mu = dealias(chemical_potential(state.phi, params));
    const VectorField gmu = gradient(mu);
    const VectorField gphi = gradient(phid);

    double rho_min = rho.values()[0], rho_max = rho_min;
    for (double r : rho.values()) {
        rho_min = std::min(rho_min, r);
        rho_max = std::max(rho_max, r);
    }
    double eta_max = 0.0, m_max = 0.0;
    for (double s : phid.values()) {
        eta_max = std::max(eta_max, params.eta(s));
        m_max = std::max(m_max, params.m(s));
    }

    // Cahn-Hilliard part: explicit transport + flux, bilaplacian-stabilized.
    ScalarField ch_rhs = -1.0 * (prod(gphi.x(), vd.x()) + prod(gphi.y(), vd.y()));
    ch_rhs += divergence(scale_by(md, gmu));
    ScalarField phi_new = state.phi + stabilized_increment(ch_rhs, dt, eps * m_max, 4);

    // Momentum part: explicit forces, variable-density mass solve, Laplacian-
    // stabilized increment, final projection.
    const SymTensor Dv = sym_gradient(vd);
    const SymTensor S{2.0 * prod(etad, Dv.s11), 2.0 * prod(etad, Dv.s22),
                      2.0 * prod(etad, Dv.s12)};
    VectorField rhs_v = tensor_divergence(S);
    {
        VectorField b = scale_by(rhod, vd);
        const double c_rho = 0.5 * (params.rho1() - params.rho2());
        if (c_rho != 0.0) b += c_rho * scale_by(md, gmu);
        const VectorField gvx = gradient(vd.x());
        const VectorField gvy = gradient(vd.y());
        rhs_v -= VectorField(prod(b.x(), gvx.x()) + prod(b.y(), gvx.y()),
                             prod(b.x(), gvy.x()) + prod(b.y(), gvy.y()));
    }
    {
        const ScalarField lap = dealias(laplacian(state.phi));
        rhs_v -= eps * VectorField(prod(lap, gphi.x()), prod(lap, gphi.y()));
    }
    const VectorField rhs_proj = leray_project(rhs_v);

    // g = B^{-1} P_sigma rhs with B u = P_sigma(rho u).
    auto pack = [](const VectorField& v) {
        std::vector<double> out(v.x().values());
        out.insert(out.end(), v.y().values().begin(), v.y().values().end());
        return out;
    };
    auto unpack = [&](const std::vector<double>& x) {
        const std::size_t n = grid->size();
        return VectorField(ScalarField(grid, std::vector<double>(x.begin(), x.begin() + n)),
                           ScalarField(grid, std::vector<double>(x.begin() + n, x.end())));
    };
    auto apply = [&](const std::vector<double>& x) {
        const VectorField u = unpack(x);
        return pack(leray_project(VectorField(hadamard(rho, u.x()), hadamard(rho, u.y()))));
    };
    const double inv_rho_mean = 1.0 / rho.mean();
    auto precond = [&](const std::vector<double>& r) {
        std::vector<double> z(r);
        for (double& v : z) v *= inv_rho_mean;
        return z;
    };
    PcgOptions opts;
    opts.tol = cfg.inner_tol;
    opts.max_iter = cfg.inner_max_iter;
    const PcgResult res = pcg_solve(apply, precond, pack(rhs_proj), {}, opts);
    const VectorField accel = unpack(res.x);

    const double nu_bar = eta_max / rho_min;
    VectorField v_new = state.v + VectorField(stabilized_increment(accel.x(), dt, nu_bar, 2),
                                              stabilized_increment(accel.y(), dt, nu_bar, 2));
    v_new = leray_project(v_new);
    return ReferenceState{std::move(v_new), std::move(phi_new)};
}

ReferenceState reference_run(const VectorField& v0, const ScalarField& phi0, double total_T,
                             int n_steps, const ModelParams& params, const SolverConfig& cfg) {
    ReferenceState s{leray_project(v0), phi0};
    const double dt = total_T / n_steps;
    for (int j = 0; j < n_steps; ++j) s = reference_step(s, dt, params, cfg);
    return s;
}

} // namespace nsch
