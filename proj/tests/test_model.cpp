#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "nsch/model.hpp"
#include "nsch/sampling.hpp"

using namespace nsch;

namespace {

constexpr double TWO_PI = 2.0 * std::numbers::pi;

GridPtr square_grid(int n) { return make_grid(n, n, TWO_PI, TWO_PI); }

ModelParams default_params(double rho1 = 1.0, double rho2 = 3.0, double eps = 0.1) {
    return ModelParams(rho1, rho2, eps);
}

} // namespace

TEST_CASE("density is exactly affine") {
    GridPtr g = square_grid(16);
    const ModelParams params = default_params(1.0, 3.0);

    const ScalarField minus1(g, -1.0), plus1(g, 1.0), zero(g, 0.0);
    CHECK(coeff_eval(Coefficient::Rho, minus1, params).max_abs() == 1.0);
    CHECK((coeff_eval(Coefficient::Rho, plus1, params) - ScalarField(g, 3.0)).max_abs() == 0.0);
    CHECK((coeff_eval(Coefficient::Rho, zero, params) - ScalarField(g, 2.0)).max_abs() == 0.0);
    CHECK(coeff_eval(Coefficient::RhoPrime, zero, params).values()[0] == 1.0);

    SUBCASE("affinity under linear combination") {
        std::mt19937_64 rng(3);
        const ScalarField p1 = random_band_limited(g, rng, 5, 0.7);
        const ScalarField p2 = random_band_limited(g, rng, 5, 0.7);
        const double a = 0.4, b = -0.9;
        const ScalarField lhs = coeff_eval(Coefficient::Rho, a * p1 + b * p2, params);
        ScalarField rhs = a * coeff_eval(Coefficient::Rho, p1, params) +
                          b * coeff_eval(Coefficient::Rho, p2, params);
        const double mean_rho = 0.5 * (params.rho1() + params.rho2());
        for (auto& v : rhs.values()) v += (1.0 - a - b) * mean_rho;
        CHECK((lhs - rhs).max_abs() <= 1e-14);
    }
}

TEST_CASE("matched densities give identically zero rho_prime") {
    const ModelParams params = default_params(2.0, 2.0);
    CHECK(params.rho_prime() == 0.0);
    CHECK(params.matched_density());
    CHECK(params.rho(0.37) == 2.0);
}

TEST_CASE("double well derivative vanishes at the minima") {
    GridPtr g = square_grid(16);
    const ModelParams params = default_params();
    CHECK(coeff_eval(Coefficient::WPrime, ScalarField(g, 1.0), params).max_abs() == 0.0);
    CHECK(coeff_eval(Coefficient::WPrime, ScalarField(g, -1.0), params).max_abs() == 0.0);
    CHECK(coeff_eval(Coefficient::W, ScalarField(g, 1.0), params).max_abs() == 0.0);
    CHECK(coeff_eval(Coefficient::W, ScalarField(g, 0.0), params).values()[0] == 0.25);
}

TEST_CASE("unknown coefficient selector is rejected") {
    CHECK_THROWS_AS(coefficient_from_name("viscosity"), std::invalid_argument);
    CHECK(coefficient_from_name("eta_prime") == Coefficient::EtaPrime);
}

TEST_CASE("constitutive lower bounds checked at construction") {
    CHECK_THROWS_AS(ModelParams(1.0, 3.0, 0.1, ViscosityLaw::Tanh, 1.0, 0.1,
                                MobilityLaw::Constant, 0.02, 0.005, /*eta0_min=*/10.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(-1.0, 3.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(1.0, 3.0, 0.0), std::invalid_argument);
}

TEST_CASE("chemical potential") {
    GridPtr g = square_grid(32);
    const double eps = 0.1;
    const ModelParams params = default_params(1.0, 3.0, eps);

    SUBCASE("constants: mu = W'(c)/eps") {
        const double c = 0.3;
        const ScalarField mu = chemical_potential(ScalarField(g, c), params);
        const double expect = params.W_prime(c) / eps;
        CHECK((mu - ScalarField(g, expect)).max_abs() <= 1e-13 * std::abs(expect));
    }
    SUBCASE("pure phases: mu = 0") {
        CHECK(chemical_potential(ScalarField(g, 1.0), params).max_abs() <= 1e-15);
        CHECK(chemical_potential(ScalarField(g, -1.0), params).max_abs() <= 1e-15);
    }
    SUBCASE("pointwise oracle on a band-limited field") {
        const ScalarField phi =
            sample_field(g, [](double x, double) { return 0.1 * std::sin(x); });
        const ScalarField mu = chemical_potential(phi, params);
        // -eps*lap(phi) = eps*0.1 sin x; W'(phi)/eps nodewise (modes 1 and 3,
        // below the dealias cutoff, so truncation is inactive)
        ScalarField expect(g);
        const Grid& gr = *g;
        for (int j = 0; j < gr.ny(); ++j)
            for (int i = 0; i < gr.nx(); ++i) {
                const double s = 0.1 * std::sin(gr.x(i));
                expect(i, j) = eps * s + params.W_prime(s) / eps;
            }
        CHECK((mu - expect).max_abs() <= 1e-12);
    }
}

TEST_CASE("chemical potential is the variational derivative of the free energy") {
    GridPtr g = square_grid(32);
    const ModelParams params = default_params();
    std::mt19937_64 rng(17);
    const ScalarField phi = random_band_limited(g, rng, 2, 0.4);
    const ScalarField psi = random_band_limited(g, rng, 2, 0.5);

    const double h = 1e-5;
    ScalarField fwd = phi, bwd = phi;
    fwd += h * psi;
    bwd -= h * psi;
    const double directional = (free_energy(fwd, params) - free_energy(bwd, params)) / (2.0 * h);
    const double pairing = inner(chemical_potential(phi, params), psi);
    CHECK(std::abs(directional - pairing) <= 1e-6 * std::max(1.0, std::abs(pairing)));
}
