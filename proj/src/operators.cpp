#include "nsch/operators.hpp"

#include <stdexcept>

#include "nsch/diagnostics.hpp"
#include "nsch/spectral_ops.hpp"

namespace nsch {

SymTensor sym_gradient(const VectorField& v) {
    const VectorField gx = gradient(v.x());
    const VectorField gy = gradient(v.y());
    ScalarField s12 = 0.5 * (gx.y() + gy.x());
    return SymTensor{gx.x(), gy.y(), std::move(s12)};
}

VectorField tensor_divergence(const SymTensor& s) {
    const Grid& g = s.s11.grid();
    const Spectrum a = to_spectrum(s.s11);
    const Spectrum b = to_spectrum(s.s22);
    const Spectrum c = to_spectrum(s.s12);
    Spectrum dx(a.size()), dy(a.size());
    const int nxh = g.nx() / 2 + 1;
    std::size_t n = 0;
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < nxh; ++i, ++n) {
            const std::complex<double> ikx(0.0, g.kx_deriv()[i]);
            const std::complex<double> iky(0.0, g.ky_deriv()[j]);
            dx[n] = ikx * a[n] + iky * c[n];
            dy[n] = ikx * c[n] + iky * b[n];
        }
    return VectorField(from_spectrum(s.s11.grid_ptr(), dx), from_spectrum(s.s11.grid_ptr(), dy));
}

namespace {

// Dealiased product of two already-dealiased factors.
ScalarField prod(const ScalarField& a, const ScalarField& b) { return dealias(hadamard(a, b)); }

VectorField scale_by(const ScalarField& a, const VectorField& v) {
    return VectorField(prod(a, v.x()), prod(a, v.y()));
}

// (b . grad) w for dealiased b, w.
VectorField advect(const VectorField& b, const VectorField& w) {
    const VectorField gwx = gradient(w.x());
    const VectorField gwy = gradient(w.y());
    ScalarField cx = prod(b.x(), gwx.x()) + prod(b.y(), gwx.y());
    ScalarField cy = prod(b.x(), gwy.x()) + prod(b.y(), gwy.y());
    return VectorField(std::move(cx), std::move(cy));
}

} // namespace

VectorField eval_F1(const VectorField& v, const VectorField& dtv, const ScalarField& phi,
                    const ModelParams& params, const ScalarField& rho0, const ScalarField& eta0) {
    require_same_grid(v.grid(), phi.grid(), "eval_F1");
    require_same_grid(v.grid(), dtv.grid(), "eval_F1");
    require_same_grid(v.grid(), rho0.grid(), "eval_F1");
    require_finite(v, "eval_F1");
    require_finite(dtv, "eval_F1");
    require_finite(phi, "eval_F1");

    const double eps = params.epsilon();
    const VectorField vd = dealias(v);
    const VectorField dtvd = dealias(dtv);
    const ScalarField phid = dealias(phi);

    VectorField out(v.grid_ptr());

    // (rho0 - rho(phi)) dtv; identically zero for matched densities.
    if (!params.matched_density()) {
        const ScalarField drho = dealias(rho0 - coeff_eval(Coefficient::Rho, phi, params));
        out += scale_by(drho, dtvd);
    }

    // div(2 (eta(phi) - eta0) Dv), the viscosity pair taken as one object.
    {
        const ScalarField deta = dealias(coeff_eval(Coefficient::Eta, phi, params) - eta0);
        const SymTensor Dv = sym_gradient(vd);
        SymTensor S{2.0 * prod(deta, Dv.s11), 2.0 * prod(deta, Dv.s22),
                    2.0 * prod(deta, Dv.s12)};
        out += tensor_divergence(S);
    }

    // -eps * lap(phi) grad(phi)
    {
        const ScalarField lap = dealias(laplacian(phi));
        const VectorField gphi = gradient(phid);
        out -= eps * VectorField(prod(lap, gphi.x()), prod(lap, gphi.y()));
    }

    // -((rho v + c_rho m(phi) grad(mu)) . grad) v
    {
        const ScalarField rho = dealias(coeff_eval(Coefficient::Rho, phi, params));
        VectorField b = scale_by(rho, vd);
        const double c_rho = 0.5 * (params.rho1() - params.rho2());
        if (c_rho != 0.0) {
            const ScalarField mphi = dealias(coeff_eval(Coefficient::M, phi, params));
            const VectorField gmu = gradient(dealias(chemical_potential(phi, params)));
            b += c_rho * scale_by(mphi, gmu);
        }
        out -= advect(b, vd);
    }

    return out;
}

VectorField eval_F1_model_h(const VectorField& v, const ScalarField& phi,
                            const ModelParams& params, const ScalarField& eta0) {
    require_same_grid(v.grid(), phi.grid(), "eval_F1_model_h");
    require_finite(v, "eval_F1_model_h");
    require_finite(phi, "eval_F1_model_h");

    const double eps = params.epsilon();
    const VectorField vd = dealias(v);
    const ScalarField phid = dealias(phi);

    VectorField out(v.grid_ptr());
    {
        const ScalarField deta = dealias(coeff_eval(Coefficient::Eta, phi, params) - eta0);
        const SymTensor Dv = sym_gradient(vd);
        SymTensor S{2.0 * prod(deta, Dv.s11), 2.0 * prod(deta, Dv.s22),
                    2.0 * prod(deta, Dv.s12)};
        out += tensor_divergence(S);
    }
    {
        const ScalarField lap = dealias(laplacian(phi));
        const VectorField gphi = gradient(phid);
        out -= eps * VectorField(prod(lap, gphi.x()), prod(lap, gphi.y()));
    }
    {
        const ScalarField rho = dealias(coeff_eval(Coefficient::Rho, phi, params));
        out -= advect(scale_by(rho, vd), vd);
    }
    return out;
}

ScalarField eval_F2(const VectorField& v, const ScalarField& phi, const ModelParams& params,
                    const ScalarField& m0) {
    require_same_grid(v.grid(), phi.grid(), "eval_F2");
    require_same_grid(v.grid(), m0.grid(), "eval_F2");
    require_finite(v, "eval_F2");
    require_finite(phi, "eval_F2");

    const double eps = params.epsilon();
    const VectorField vd = dealias(v);
    const ScalarField phid = dealias(phi);
    const ScalarField mphi = dealias(coeff_eval(Coefficient::M, phi, params));

    // -grad(phi) . v
    const VectorField gphi = gradient(phid);
    ScalarField out = -1.0 * (prod(gphi.x(), vd.x()) + prod(gphi.y(), vd.y()));

    // div(m(phi) grad(W'(phi)))/eps
    {
        const VectorField gwp = gradient(dealias(coeff_eval(Coefficient::WPrime, phi, params)));
        out += (1.0 / eps) * divergence(scale_by(mphi, gwp));
    }

    // eps m0 bilap(phi) - eps div(m(phi) grad(lap(phi)))
    {
        const ScalarField m0d = dealias(m0);
        out += eps * prod(m0d, dealias(bilaplacian(phi)));
        const VectorField glap = gradient(dealias(laplacian(phi)));
        out -= eps * divergence(scale_by(mphi, glap));
    }
    return out;
}

WindowRhs eval_F(const WindowTrajectory& traj, const ModelParams& params, bool model_h) {
    const auto dtv = time_derivative_v(traj);
    WindowRhs rhs;
    rhs.T = traj.T();
    rhs.f.reserve(traj.n_steps() + 1);
    rhs.g.reserve(traj.n_steps() + 1);
    for (int j = 0; j <= traj.n_steps(); ++j) {
        VectorField f1 = model_h
                             ? eval_F1_model_h(traj.v(j), traj.phi(j), params, traj.eta0())
                             : eval_F1(traj.v(j), dtv[j], traj.phi(j), params, traj.rho0(),
                                       traj.eta0());
        rhs.f.push_back(leray_project(f1));
        rhs.g.push_back(eval_F2(traj.v(j), traj.phi(j), params, traj.m0()));
    }
    return rhs;
}

WindowRhs apply_L(const WindowTrajectory& traj, const ModelParams& params) {
    const auto dtv = time_derivative_v(traj);
    const auto dtphi = time_derivative_phi(traj);
    const double eps = params.epsilon();
    WindowRhs out;
    out.T = traj.T();
    out.f.reserve(traj.n_steps() + 1);
    out.g.reserve(traj.n_steps() + 1);
    for (int j = 0; j <= traj.n_steps(); ++j) {
        VectorField mass(traj.grid_ptr());
        mass = VectorField(hadamard(traj.rho0(), dtv[j].x()), hadamard(traj.rho0(), dtv[j].y()));
        const SymTensor Dv = sym_gradient(traj.v(j));
        SymTensor S{2.0 * hadamard(traj.eta0(), Dv.s11), 2.0 * hadamard(traj.eta0(), Dv.s22),
                    2.0 * hadamard(traj.eta0(), Dv.s12)};
        out.f.push_back(leray_project(mass - tensor_divergence(S)));
        out.g.push_back(dtphi[j] + eps * hadamard(traj.m0(), bilaplacian(traj.phi(j))));
    }
    return out;
}

double apply_L_residual(const WindowTrajectory& traj, const WindowRhs& rhs,
                        const ModelParams& params, const NormConfig& norms) {
    if (rhs.n_steps() != traj.n_steps() || rhs.T != traj.T())
        throw std::invalid_argument("apply_L_residual: mismatched time grids");
    WindowRhs res = apply_L(traj, params);
    for (int j = 1; j <= traj.n_steps(); ++j) {
        res.f[j] -= rhs.f[j];
        res.g[j] -= rhs.g[j];
    }
    res.f[0] = VectorField(traj.grid_ptr());
    res.g[0] = ScalarField(traj.grid_ptr());
    const auto [y1, y2] = yt_norm(res, norms);
    return y1 + y2;
}

} // namespace nsch
