#include "nsch/sampling.hpp"

#include <cmath>

#include "nsch/spectral_ops.hpp"

namespace nsch {

namespace {

// Accumulate a*cos(mx*2pi x/lx + ny*2pi y/ly + shift) nodally; building the
// sample in physical space keeps it independent of the FFT layout.
void add_mode(ScalarField& f, int mx, int my, double amp, double phase) {
    const Grid& g = f.grid();
    const double kx = 2.0 * std::numbers::pi * mx / g.lx();
    const double ky = 2.0 * std::numbers::pi * my / g.ly();
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i)
            f(i, j) += amp * std::cos(kx * g.x(i) + ky * g.y(j) + phase);
}

} // namespace

ScalarField random_band_limited(GridPtr grid, std::mt19937_64& rng, int max_mode,
                                double amplitude, double decay) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    ScalarField f(grid);
    for (int mx = 0; mx <= max_mode; ++mx) {
        for (int my = -max_mode; my <= max_mode; ++my) {
            if (mx == 0 && my <= 0) continue; // one representative per +-k pair
            const double k2 = static_cast<double>(mx) * mx + static_cast<double>(my) * my;
            const double a = unit(rng) * std::pow(1.0 + k2, -0.5 * decay);
            add_mode(f, mx, my, a, angle(rng));
        }
    }
    const double scale = f.max_abs();
    if (scale > 0.0) f *= amplitude / scale;
    return f;
}

VectorField random_solenoidal(GridPtr grid, std::mt19937_64& rng, int max_mode, double amplitude,
                              double decay) {
    ScalarField a = random_band_limited(grid, rng, max_mode, 1.0, decay);
    ScalarField b = random_band_limited(grid, rng, max_mode, 1.0, decay);
    VectorField v = leray_project(VectorField(std::move(a), std::move(b)));
    const double scale = v.max_abs();
    if (scale > 0.0) v *= amplitude / scale;
    return v;
}

ScalarField spinodal_noise(GridPtr grid, std::uint64_t seed, double noise, int max_mode,
                           double phi_mean) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    ScalarField f(grid);
    for (int mx = 0; mx <= max_mode; ++mx)
        for (int my = -max_mode; my <= max_mode; ++my) {
            if (mx == 0 && my <= 0) continue;
            add_mode(f, mx, my, unit(rng), angle(rng));
        }
    const double scale = f.max_abs();
    if (scale > 0.0) f *= noise / scale;
    const double mu = f.mean();
    for (double& v : f.values()) v += phi_mean - mu;
    return f;
}

} // namespace nsch
