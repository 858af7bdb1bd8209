#pragma once

#include <complex>
#include <vector>

#include "nsch/grid.hpp"

namespace nsch {

/// Half-spectrum coefficients of a real field: row-major (ky outer) with
/// ny x (nx/2+1) entries, FFTW r2c convention, unnormalized forward.
using Spectrum = std::vector<std::complex<double>>;

std::size_t spectrum_size(const Grid& g);

/// Real -> half spectrum (unnormalized).
Spectrum fft_forward(const Grid& g, const std::vector<double>& values);

/// Half spectrum -> real, including the 1/(nx*ny) normalization.
std::vector<double> fft_backward(const Grid& g, const Spectrum& coeffs);

} // namespace nsch
