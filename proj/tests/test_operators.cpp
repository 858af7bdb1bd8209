#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <numbers>
#include <random>

#include "nsch/diagnostics.hpp"
#include "nsch/operators.hpp"
#include "nsch/sampling.hpp"
#include "nsch/spectral_ops.hpp"
#include "nsch/window_solver.hpp"

using namespace nsch;

namespace {

constexpr double TWO_PI = 2.0 * std::numbers::pi;

GridPtr square_grid(int n) { return make_grid(n, n, TWO_PI, TWO_PI); }

ScalarField pd(const ScalarField& f) { return dealias(f); }

ScalarField prod(const ScalarField& a, const ScalarField& b) {
    return dealias(hadamard(dealias(a), dealias(b)));
}

// Low-mode inputs so no product in either route touches the dealias cutoff:
// the oracle may then associate derivatives and products differently and
// still agree to round-off.
struct SmallData {
    GridPtr grid;
    VectorField v, dtv;
    ScalarField phi, phi_frozen;
};

SmallData make_small_data(int n, std::uint64_t seed) {
    SmallData d;
    d.grid = square_grid(n);
    std::mt19937_64 rng(seed);
    d.v = random_solenoidal(d.grid, rng, 2, 0.08);
    d.dtv = random_solenoidal(d.grid, rng, 2, 0.05);
    d.phi = random_band_limited(d.grid, rng, 2, 0.06);
    d.phi_frozen = random_band_limited(d.grid, rng, 2, 0.06);
    return d;
}

} // namespace

TEST_CASE("time derivative of window trajectories") {
    GridPtr g = square_grid(16);
    const ModelParams params(1.0, 3.0, 0.1);
    std::mt19937_64 rng(5);
    const ScalarField shape = random_band_limited(g, rng, 4, 1.0);
    const VectorField vshape = random_solenoidal(g, rng, 4, 1.0);

    SUBCASE("constant series -> zero") {
        WindowTrajectory traj(vshape, shape, 1.0, 4, params);
        for (const auto& d : time_derivative_v(traj)) CHECK(d.max_abs() == 0.0);
        for (const auto& d : time_derivative_phi(traj)) CHECK(d.max_abs() == 0.0);
    }
    SUBCASE("linear-in-time series is exact, slot 0 copies slot 1") {
        WindowTrajectory traj{VectorField(g), ScalarField(g), 1.0, 4, params};
        for (int j = 1; j <= 4; ++j)
            traj.set_state(j, traj.time(j) * vshape, traj.time(j) * shape);
        const auto dv = time_derivative_v(traj);
        const auto dp = time_derivative_phi(traj);
        for (int j = 0; j <= 4; ++j) {
            CHECK((dv[j] - vshape).max_abs() <= 1e-12);
            CHECK((dp[j] - shape).max_abs() <= 1e-12);
        }
    }
    SUBCASE("sin(t) profile converges at O(dt)") {
        auto error_at = [&](int steps) {
            WindowTrajectory traj{VectorField(g), ScalarField(g), 1.0, steps, params};
            for (int j = 1; j <= steps; ++j)
                traj.set_state(j, VectorField(g), std::sin(traj.time(j)) * shape);
            const auto dp = time_derivative_phi(traj);
            double err = 0.0;
            for (int j = 1; j <= steps; ++j)
                err = std::max(err, (dp[j] - std::cos(traj.time(j)) * shape).max_abs());
            return err;
        };
        const double e1 = error_at(16);
        const double e2 = error_at(32);
        CHECK(e1 / e2 > 1.6);
        CHECK(e1 / e2 < 2.4);
    }
    SUBCASE("too few steps rejected") {
        CHECK_THROWS_AS(WindowTrajectory(vshape, shape, 1.0, 1, params), std::invalid_argument);
    }
}

TEST_CASE("F vanishes on (0, constant)") {
    GridPtr g = square_grid(32);
    const ModelParams params(1.0, 3.0, 0.1);
    const ScalarField phic(g, 0.4);
    const ScalarField rho0 = coeff_eval(Coefficient::Rho, phic, params);
    const ScalarField eta0 = coeff_eval(Coefficient::Eta, phic, params);
    const ScalarField m0 = coeff_eval(Coefficient::M, phic, params);
    const VectorField zero(g);
    CHECK(eval_F1(zero, zero, phic, params, rho0, eta0).max_abs() == 0.0);
    CHECK(eval_F2(zero, phic, params, m0).max_abs() == 0.0);
}

TEST_CASE("F1 term-by-term against an independent oracle") {
    const SmallData d = make_small_data(64, 21);
    const ModelParams params(1.0, 3.0, 0.1);
    const double eps = params.epsilon();
    const ScalarField rho0 = coeff_eval(Coefficient::Rho, d.phi_frozen, params);
    const ScalarField eta0 = coeff_eval(Coefficient::Eta, d.phi_frozen, params);

    const VectorField mine = eval_F1(d.v, d.dtv, d.phi, params, rho0, eta0);

    // Oracle: same five term groups, assembled in different association
    // order (product rules instead of divergence of products, conservative
    // instead of advective transport).
    VectorField oracle(d.grid);
    const VectorField vd = dealias(d.v);
    const ScalarField phid = pd(d.phi);
    {
        // (rho0 - rho) dtv via the affine formula rho' (phi_frozen - phi)
        const ScalarField dphi = pd(d.phi_frozen - d.phi);
        oracle += params.rho_prime() * VectorField(prod(dphi, d.dtv.x()), prod(dphi, d.dtv.y()));
    }
    {
        // div(2 deta Dv) = 2 grad(deta).Dv + deta (lap v + grad div v)
        const ScalarField deta = pd(coeff_eval(Coefficient::Eta, d.phi, params) - eta0);
        const VectorField gdeta = gradient(deta);
        const SymTensor Dv = sym_gradient(vd);
        const VectorField lapv = laplacian(vd);
        const VectorField gdiv = gradient(divergence(vd));
        oracle += VectorField(2.0 * (prod(gdeta.x(), Dv.s11) + prod(gdeta.y(), Dv.s12)) +
                                  prod(deta, lapv.x() + gdiv.x()),
                              2.0 * (prod(gdeta.x(), Dv.s12) + prod(gdeta.y(), Dv.s22)) +
                                  prod(deta, lapv.y() + gdiv.y()));
    }
    {
        // -eps lap(phi) grad(phi), operands commuted
        const ScalarField lap = pd(laplacian(d.phi));
        const VectorField gphi = gradient(phid);
        oracle -= eps * VectorField(prod(gphi.x(), lap), prod(gphi.y(), lap));
    }
    {
        // transport in conservative form: (b.grad)v = div(v b^T) - v div(b)
        const ScalarField rho = pd(coeff_eval(Coefficient::Rho, d.phi, params));
        VectorField b(prod(rho, vd.x()), prod(rho, vd.y()));
        const double c_rho = 0.5 * (params.rho1() - params.rho2());
        const ScalarField mphi = pd(coeff_eval(Coefficient::M, d.phi, params));
        const VectorField gmu = gradient(pd(chemical_potential(d.phi, params)));
        b += c_rho * VectorField(prod(mphi, gmu.x()), prod(mphi, gmu.y()));
        const ScalarField divb = divergence(b);
        for (int comp = 0; comp < 2; ++comp) {
            const ScalarField& vi = comp == 0 ? vd.x() : vd.y();
            const VectorField flux(prod(vi, b.x()), prod(vi, b.y()));
            ScalarField conv = divergence(flux) - prod(vi, divb);
            if (comp == 0)
                oracle.x() -= conv;
            else
                oracle.y() -= conv;
        }
    }

    const double scale = std::max(1.0, mine.max_abs());
    CHECK((mine - oracle).max_abs() <= 1e-9 * scale);
}

TEST_CASE("F2 term-by-term against an independent oracle (variable mobility)") {
    const SmallData d = make_small_data(64, 33);
    const ModelParams params(1.0, 3.0, 0.1, ViscosityLaw::Tanh, 1.0, 0.1, MobilityLaw::Tanh,
                             0.02, 0.005);
    const double eps = params.epsilon();
    const ScalarField m0 = coeff_eval(Coefficient::M, d.phi_frozen, params);

    const ScalarField mine = eval_F2(d.v, d.phi, params, m0);

    const VectorField vd = dealias(d.v);
    const ScalarField phid = pd(d.phi);
    const ScalarField mphi = pd(coeff_eval(Coefficient::M, d.phi, params));
    const VectorField gm = gradient(mphi);

    // -grad(phi).v  via  -(div(phi v) - phi div v)
    ScalarField oracle = -1.0 * (divergence(VectorField(prod(phid, vd.x()), prod(phid, vd.y()))) -
                                 prod(phid, divergence(vd)));
    {
        // div(m grad W')/eps = (grad m . grad W' + m lap W')/eps
        const ScalarField wp = pd(coeff_eval(Coefficient::WPrime, d.phi, params));
        const VectorField gwp = gradient(wp);
        oracle += (1.0 / eps) * (prod(gm.x(), gwp.x()) + prod(gm.y(), gwp.y()) +
                                 prod(mphi, laplacian(wp)));
    }
    {
        // eps m0 bilap(phi) - eps div(m grad lap phi)
        //   second term via grad m . grad lap phi + m bilap phi
        const ScalarField lap = pd(laplacian(d.phi));
        const ScalarField bil = pd(bilaplacian(d.phi));
        const VectorField glap = gradient(lap);
        oracle += eps * prod(pd(m0), bil);
        oracle -= eps * (prod(gm.x(), glap.x()) + prod(gm.y(), glap.y()) + prod(mphi, bil));
    }

    const double scale = std::max(1.0, mine.max_abs());
    CHECK((mine - oracle).max_abs() <= 1e-9 * scale);
}

TEST_CASE("F2 stiff pair cancels exactly for constant mobility") {
    const SmallData d = make_small_data(32, 41);
    const ModelParams params(1.0, 3.0, 0.1); // default constant mobility
    const ScalarField m0 = coeff_eval(Coefficient::M, d.phi_frozen, params);

    const ScalarField full = eval_F2(d.v, d.phi, params, m0);

    // Reduction: only transport + W' flux survive.
    const VectorField vd = dealias(d.v);
    const ScalarField phid = pd(d.phi);
    const VectorField gphi = gradient(phid);
    ScalarField reduced = -1.0 * (prod(gphi.x(), vd.x()) + prod(gphi.y(), vd.y()));
    const ScalarField mphi = pd(coeff_eval(Coefficient::M, d.phi, params));
    const VectorField gwp = gradient(pd(coeff_eval(Coefficient::WPrime, d.phi, params)));
    reduced += (1.0 / params.epsilon()) *
               divergence(VectorField(prod(mphi, gwp.x()), prod(mphi, gwp.y())));

    CHECK((full - reduced).max_abs() <= 1e-12 * std::max(1.0, full.max_abs()));
}

TEST_CASE("matched densities: F1 bit-identical to the flux-free implementation") {
    const SmallData d = make_small_data(32, 55);
    const ModelParams params(2.0, 2.0, 0.1);
    const ScalarField rho0 = coeff_eval(Coefficient::Rho, d.phi_frozen, params);
    const ScalarField eta0 = coeff_eval(Coefficient::Eta, d.phi_frozen, params);

    const VectorField a = eval_F1(d.v, d.dtv, d.phi, params, rho0, eta0);
    const VectorField b = eval_F1_model_h(d.v, d.phi, params, eta0);
    CHECK(std::memcmp(a.x().values().data(), b.x().values().data(),
                      a.x().values().size() * sizeof(double)) == 0);
    CHECK(std::memcmp(a.y().values().data(), b.y().values().data(),
                      a.y().values().size() * sizeof(double)) == 0);
}

TEST_CASE("capillary force form differs from the tensor form by a gradient") {
    const SmallData d = make_small_data(64, 67);
    const double eps = 0.1;
    // -eps lap(phi) grad(phi)  vs  div(-eps grad phi x grad phi): equal after
    // Leray projection.
    const ScalarField phid = pd(d.phi);
    const ScalarField lap = pd(laplacian(d.phi));
    const VectorField gphi = gradient(phid);
    const VectorField remark_form =
        -eps * VectorField(prod(lap, gphi.x()), prod(lap, gphi.y()));
    const SymTensor outer{-eps * prod(gphi.x(), gphi.x()), -eps * prod(gphi.y(), gphi.y()),
                          -eps * prod(gphi.x(), gphi.y())};
    const VectorField tensor_form = tensor_divergence(outer);

    const VectorField pa = leray_project(remark_form);
    const VectorField pb = leray_project(tensor_form);
    const double scale = std::max(1e-12, pa.max_abs());
    CHECK((pa - pb).max_abs() <= 1e-11 * std::max(1.0, scale));
    // and they differ before projection (the gradient part is nonzero)
    CHECK((remark_form - tensor_form).max_abs() > 1e-8 * scale);
}

TEST_CASE("apply_L residual") {
    GridPtr g = square_grid(32);
    const ModelParams params(1.0, 3.0, 0.1);
    const NormConfig norms;

    SUBCASE("constant trajectory with zero rhs has zero residual") {
        WindowTrajectory traj(VectorField(g), ScalarField(g, 0.7), 0.1, 4, params);
        const WindowRhs rhs = zero_rhs(g, 0.1, 4);
        CHECK(apply_L_residual(traj, rhs, params, norms) <= 1e-14);
    }
    SUBCASE("mismatched time grids rejected") {
        WindowTrajectory traj(VectorField(g), ScalarField(g, 0.7), 0.1, 4, params);
        CHECK_THROWS_AS(apply_L_residual(traj, zero_rhs(g, 0.1, 5), params, norms),
                        std::invalid_argument);
        CHECK_THROWS_AS(apply_L_residual(traj, zero_rhs(g, 0.2, 4), params, norms),
                        std::invalid_argument);
    }
    SUBCASE("solver output satisfies the equations it solved") {
        std::mt19937_64 rng(71);
        const ScalarField phi0 = random_band_limited(g, rng, 4, 0.3);
        const VectorField v0 = random_solenoidal(g, rng, 4, 0.2);
        WindowRhs rhs = zero_rhs(g, 0.1, 8);
        for (int j = 0; j <= 8; ++j) {
            rhs.f[j] = leray_project(random_solenoidal(g, rng, 4, 0.5));
            rhs.g[j] = random_band_limited(g, rng, 4, 0.5);
        }
        SolverConfig cfg{0.1 / 8, 1e-12, 500};
        const WindowTrajectory traj = solve_window(v0, phi0, rhs, params, cfg);
        const auto [y1, y2] = yt_norm(rhs, norms);
        CHECK(apply_L_residual(traj, rhs, params, norms) <= 1e-8 * (1.0 + y1 + y2));
    }
    SUBCASE("residual grows linearly in a one-slot perturbation") {
        std::mt19937_64 rng(73);
        WindowTrajectory traj(VectorField(g), ScalarField(g, 0.2), 0.1, 4, params);
        const WindowRhs rhs = zero_rhs(g, 0.1, 4);
        const ScalarField bump = random_band_limited(g, rng, 3, 1.0);
        auto residual_for = [&](double delta) {
            WindowTrajectory t = traj;
            t.set_state(2, t.v(2), t.phi(2) + delta * bump);
            return apply_L_residual(t, rhs, params, norms);
        };
        const double r1 = residual_for(1e-3);
        const double r2 = residual_for(2e-3);
        CHECK(r2 / r1 == doctest::Approx(2.0).epsilon(1e-6));
    }
}
