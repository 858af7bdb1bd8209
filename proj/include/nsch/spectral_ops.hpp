#pragma once

#include "nsch/fft.hpp"
#include "nsch/field.hpp"

namespace nsch {

Spectrum to_spectrum(const ScalarField& f);
ScalarField from_spectrum(GridPtr grid, const Spectrum& s);

/// Exact derivatives of the trigonometric interpolant. grad: scalar->vector,
/// div: vector->scalar, laplacian/bilaplacian: componentwise.
VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& v);
ScalarField laplacian(const ScalarField& f);
VectorField laplacian(const VectorField& v);
ScalarField bilaplacian(const ScalarField& f);
VectorField bilaplacian(const VectorField& v);

/// Orthogonal projection onto discretely divergence-free fields; per-mode
/// I - k k^T/|k|^2, mean mode passes through.
VectorField leray_project(const VectorField& v);

/// 2/3-rule truncation: zero all modes with 3|m| > nx or 3|n| > ny.
ScalarField dealias(const ScalarField& f);
VectorField dealias(const VectorField& v);

/// Dealiased pointwise product dealias(dealias(a) * dealias(b)).
ScalarField multiply_dealiased(const ScalarField& a, const ScalarField& b);

/// (sum_{|alpha| <= order} ||d^alpha f||_p^p)^(1/p), spectral derivatives and
/// nodal L^p quadrature. order in 0..4.
double sobolev_norm(const ScalarField& f, double p, int order);
double sobolev_norm(const VectorField& v, double p, int order);

/// Bessel-multiplier norm: (1+|k|^2)^(s/2) in Fourier, then nodal L^p.
double fractional_sobolev_norm(const ScalarField& f, double p, double s);
double fractional_sobolev_norm(const VectorField& v, double p, double s);

} // namespace nsch
