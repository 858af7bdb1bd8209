#include "nsch/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include "nsch/spectral_ops.hpp"

namespace nsch {

NormConfig::NormConfig(double p_, TimeQuadrature q) : p(p_), quadrature(q) {
    if (!(p > 4.0 && p < 6.0))
        throw std::invalid_argument("NormConfig: p must satisfy 4 < p < 6");
}

NormConfig NormConfig::unchecked(double p_, TimeQuadrature q) {
    NormConfig cfg;
    cfg.p = p_;
    cfg.quadrature = q;
    return cfg;
}

double time_quadrature(const std::vector<double>& samples, double dt, TimeQuadrature q) {
    const std::size_t n = samples.size();
    if (n < 2) return 0.0;
    double s = 0.0;
    switch (q) {
        case TimeQuadrature::Trapezoid:
            s = 0.5 * (samples.front() + samples.back());
            for (std::size_t j = 1; j + 1 < n; ++j) s += samples[j];
            break;
        case TimeQuadrature::Rectangle:
            for (std::size_t j = 1; j < n; ++j) s += samples[j];
            break;
    }
    return s * dt;
}

namespace {

double v_part(const std::vector<VectorField>& v, const std::vector<VectorField>& dtv, double dt,
              const NormConfig& cfg) {
    std::vector<double> d2, h2;
    d2.reserve(v.size());
    h2.reserve(v.size());
    for (const auto& w : dtv) {
        const double n = lp_norm(w, 2.0);
        d2.push_back(n * n);
    }
    for (const auto& w : v) {
        const double n = sobolev_norm(w, 2.0, 2);
        h2.push_back(n * n);
    }
    return std::sqrt(time_quadrature(d2, dt, cfg.quadrature)) +
           std::sqrt(time_quadrature(h2, dt, cfg.quadrature)) +
           fractional_sobolev_norm(v.front(), 2.0, 1.0);
}

double phi_part(const std::vector<ScalarField>& phi, const std::vector<ScalarField>& dtphi,
                double dt, const NormConfig& cfg) {
    const double p = cfg.p;
    std::vector<double> dp, w4;
    dp.reserve(phi.size());
    w4.reserve(phi.size());
    for (const auto& f : dtphi) dp.push_back(std::pow(lp_norm(f, p), p));
    for (const auto& f : phi) w4.push_back(std::pow(sobolev_norm(f, p, 4), p));
    return std::pow(time_quadrature(dp, dt, cfg.quadrature), 1.0 / p) +
           std::pow(time_quadrature(w4, dt, cfg.quadrature), 1.0 / p) +
           fractional_sobolev_norm(phi.front(), p, 4.0 - 4.0 / p);
}

} // namespace

std::pair<double, double> xt_norm(const WindowTrajectory& traj, const NormConfig& cfg) {
    const int n = traj.n_steps();
    std::vector<VectorField> v;
    std::vector<ScalarField> phi;
    v.reserve(n + 1);
    phi.reserve(n + 1);
    for (int j = 0; j <= n; ++j) {
        v.push_back(traj.v(j));
        phi.push_back(traj.phi(j));
    }
    return {v_part(v, time_derivative_v(traj), traj.dt(), cfg),
            phi_part(phi, time_derivative_phi(traj), traj.dt(), cfg)};
}

double xt_distance(const WindowTrajectory& a, const WindowTrajectory& b, const NormConfig& cfg) {
    if (a.n_steps() != b.n_steps() || a.T() != b.T())
        throw std::invalid_argument("xt_distance: mismatched time grids");
    require_same_grid(a.grid(), b.grid(), "xt_distance");
    const int n = a.n_steps();
    std::vector<VectorField> dv;
    std::vector<ScalarField> dphi;
    dv.reserve(n + 1);
    dphi.reserve(n + 1);
    for (int j = 0; j <= n; ++j) {
        dv.push_back(a.v(j) - b.v(j));
        dphi.push_back(a.phi(j) - b.phi(j));
    }
    const double inv_dt = 1.0 / a.dt();
    std::vector<VectorField> ddtv;
    std::vector<ScalarField> ddtphi;
    ddtv.reserve(n + 1);
    ddtphi.reserve(n + 1);
    ddtv.push_back(inv_dt * (dv[1] - dv[0]));
    ddtphi.push_back(inv_dt * (dphi[1] - dphi[0]));
    for (int j = 1; j <= n; ++j) {
        ddtv.push_back(inv_dt * (dv[j] - dv[j - 1]));
        ddtphi.push_back(inv_dt * (dphi[j] - dphi[j - 1]));
    }
    return v_part(dv, ddtv, a.dt(), cfg) + phi_part(dphi, ddtphi, a.dt(), cfg);
}

std::pair<double, double> yt_norm(const WindowRhs& rhs, const NormConfig& cfg) {
    const double dt = rhs.dt();
    std::vector<double> f2, gp;
    f2.reserve(rhs.f.size());
    gp.reserve(rhs.g.size());
    for (const auto& f : rhs.f) {
        const double n = lp_norm(f, 2.0);
        f2.push_back(n * n);
    }
    for (const auto& g : rhs.g) gp.push_back(std::pow(lp_norm(g, cfg.p), cfg.p));
    return {std::sqrt(time_quadrature(f2, dt, cfg.quadrature)),
            std::pow(time_quadrature(gp, dt, cfg.quadrature), 1.0 / cfg.p)};
}

double yt_distance(const WindowRhs& a, const WindowRhs& b, const NormConfig& cfg) {
    if (a.n_steps() != b.n_steps() || a.T != b.T)
        throw std::invalid_argument("yt_distance: mismatched time grids");
    WindowRhs diff = a;
    for (std::size_t j = 0; j < diff.f.size(); ++j) {
        diff.f[j] -= b.f[j];
        diff.g[j] -= b.g[j];
    }
    const auto [y1, y2] = yt_norm(diff, cfg);
    return y1 + y2;
}

double energy(const VectorField& v, const ScalarField& phi, const ModelParams& params) {
    require_same_grid(v.grid(), phi.grid(), "energy");
    const ScalarField rho = coeff_eval(Coefficient::Rho, phi, params);
    double kinetic = 0.0;
    const auto& r = rho.values();
    const auto& vx = v.x().values();
    const auto& vy = v.y().values();
    for (std::size_t n = 0; n < r.size(); ++n)
        kinetic += 0.5 * r[n] * (vx[n] * vx[n] + vy[n] * vy[n]);
    kinetic *= phi.grid().cell_area();
    return kinetic + free_energy(phi, params);
}

double mass(const ScalarField& phi) { return phi.mean() * phi.grid().area(); }

double div_residual(const VectorField& v) { return lp_norm(divergence(v), 2.0); }

} // namespace nsch
