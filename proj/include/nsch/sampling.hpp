#pragma once

#include <cstdint>
#include <random>

#include "nsch/field.hpp"

namespace nsch {

/// Band-limited random scalar with Fourier amplitudes ~ (1+|m|^2)^(-decay/2),
/// real, mean removable; modes limited to |m|,|n| <= max_mode.
ScalarField random_band_limited(GridPtr grid, std::mt19937_64& rng, int max_mode,
                                double amplitude, double decay = 1.5);

/// Solenoidal band-limited random vector (projected).
VectorField random_solenoidal(GridPtr grid, std::mt19937_64& rng, int max_mode, double amplitude,
                              double decay = 1.5);

/// Seeded noise for the spinodal preset: uniform amplitudes in
/// [-noise, noise] per retained mode, band-limited to |m|,|n| <= max_mode,
/// then mean-adjusted to phi_mean.
ScalarField spinodal_noise(GridPtr grid, std::uint64_t seed, double noise, int max_mode,
                           double phi_mean);

} // namespace nsch
