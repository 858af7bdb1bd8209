#include "nsch/spectral_ops.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace nsch {

namespace {

using cplx = std::complex<double>;

// Walks the half-spectrum and hands (index, kx-table-index, ky-table-index)
// to the callback. The x index i of the half spectrum equals the table index.
template <typename F>
void for_each_mode(const Grid& g, F&& fn) {
    const int nxh = g.nx() / 2 + 1;
    std::size_t n = 0;
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < nxh; ++i, ++n) fn(n, i, j);
}

Spectrum scalar_spectrum(const ScalarField& f, const char* where) {
    require_finite(f, where);
    return to_spectrum(f);
}

} // namespace

Spectrum to_spectrum(const ScalarField& f) { return fft_forward(f.grid(), f.values()); }

ScalarField from_spectrum(GridPtr grid, const Spectrum& s) {
    return ScalarField(grid, fft_backward(*grid, s));
}

VectorField gradient(const ScalarField& f) {
    const Grid& g = f.grid();
    Spectrum s = scalar_spectrum(f, "gradient");
    Spectrum sx(s.size()), sy(s.size());
    for_each_mode(g, [&](std::size_t n, int i, int j) {
        sx[n] = cplx(0.0, g.kx_deriv()[i]) * s[n];
        sy[n] = cplx(0.0, g.ky_deriv()[j]) * s[n];
    });
    return VectorField(from_spectrum(f.grid_ptr(), sx), from_spectrum(f.grid_ptr(), sy));
}

ScalarField divergence(const VectorField& v) {
    const Grid& g = v.grid();
    Spectrum sx = scalar_spectrum(v.x(), "divergence");
    Spectrum sy = scalar_spectrum(v.y(), "divergence");
    Spectrum out(sx.size());
    for_each_mode(g, [&](std::size_t n, int i, int j) {
        out[n] = cplx(0.0, g.kx_deriv()[i]) * sx[n] + cplx(0.0, g.ky_deriv()[j]) * sy[n];
    });
    return from_spectrum(v.grid_ptr(), out);
}

ScalarField laplacian(const ScalarField& f) {
    const Grid& g = f.grid();
    Spectrum s = scalar_spectrum(f, "laplacian");
    for_each_mode(g, [&](std::size_t n, int i, int j) {
        const double k2 = g.kx()[i] * g.kx()[i] + g.ky()[j] * g.ky()[j];
        s[n] *= -k2;
    });
    return from_spectrum(f.grid_ptr(), s);
}

VectorField laplacian(const VectorField& v) {
    return VectorField(laplacian(v.x()), laplacian(v.y()));
}

ScalarField bilaplacian(const ScalarField& f) {
    const Grid& g = f.grid();
    Spectrum s = scalar_spectrum(f, "bilaplacian");
    for_each_mode(g, [&](std::size_t n, int i, int j) {
        const double k2 = g.kx()[i] * g.kx()[i] + g.ky()[j] * g.ky()[j];
        s[n] *= k2 * k2;
    });
    return from_spectrum(f.grid_ptr(), s);
}

VectorField bilaplacian(const VectorField& v) {
    return VectorField(bilaplacian(v.x()), bilaplacian(v.y()));
}

VectorField leray_project(const VectorField& v) {
    const Grid& g = v.grid();
    Spectrum sx = scalar_spectrum(v.x(), "leray_project");
    Spectrum sy = scalar_spectrum(v.y(), "leray_project");
    for_each_mode(g, [&](std::size_t n, int i, int j) {
        const double kx = g.kx_deriv()[i];
        const double ky = g.ky_deriv()[j];
        const double k2 = kx * kx + ky * ky;
        if (k2 > 0.0) {
            const cplx kdotv = (kx * sx[n] + ky * sy[n]) / k2;
            sx[n] -= kx * kdotv;
            sy[n] -= ky * kdotv;
        }
    });
    return VectorField(from_spectrum(v.grid_ptr(), sx), from_spectrum(v.grid_ptr(), sy));
}

ScalarField dealias(const ScalarField& f) {
    const Grid& g = f.grid();
    Spectrum s = to_spectrum(f);
    for_each_mode(g, [&](std::size_t n, int i, int j) {
        const int mx = i; // half spectrum: |m| = i
        const int my = std::min(j, g.ny() - j);
        if (3 * mx > g.nx() || 3 * my > g.ny()) s[n] = 0.0;
    });
    return from_spectrum(f.grid_ptr(), s);
}

VectorField dealias(const VectorField& v) { return VectorField(dealias(v.x()), dealias(v.y())); }

ScalarField multiply_dealiased(const ScalarField& a, const ScalarField& b) {
    return dealias(hadamard(dealias(a), dealias(b)));
}

namespace {

double sobolev_accumulate(const ScalarField& f, double p, int order) {
    const Grid& g = f.grid();
    const Spectrum s = to_spectrum(f);
    double acc = 0.0;
    for (int ax = 0; ax <= order; ++ax) {
        for (int ay = 0; ay + ax <= order; ++ay) {
            Spectrum d(s.size());
            for_each_mode(g, [&](std::size_t n, int i, int j) {
                cplx m(1.0, 0.0);
                const cplx ikx(0.0, g.kx_deriv()[i]);
                const cplx iky(0.0, g.ky_deriv()[j]);
                for (int q = 0; q < ax; ++q) m *= ikx;
                for (int q = 0; q < ay; ++q) m *= iky;
                d[n] = m * s[n];
            });
            const ScalarField df = from_spectrum(f.grid_ptr(), d);
            acc += std::pow(lp_norm(df, p), p);
        }
    }
    return acc;
}

} // namespace

double sobolev_norm(const ScalarField& f, double p, int order) {
    if (order < 0 || order > 4)
        throw std::invalid_argument("sobolev_norm: order must be in 0..4");
    if (!(p >= 1.0)) throw std::invalid_argument("sobolev_norm: p must be >= 1");
    require_finite(f, "sobolev_norm");
    return std::pow(sobolev_accumulate(f, p, order), 1.0 / p);
}

double sobolev_norm(const VectorField& v, double p, int order) {
    if (order < 0 || order > 4)
        throw std::invalid_argument("sobolev_norm: order must be in 0..4");
    if (!(p >= 1.0)) throw std::invalid_argument("sobolev_norm: p must be >= 1");
    require_finite(v, "sobolev_norm");
    return std::pow(sobolev_accumulate(v.x(), p, order) + sobolev_accumulate(v.y(), p, order),
                    1.0 / p);
}

ScalarField bessel_multiplier(const ScalarField& f, double s) {
    const Grid& g = f.grid();
    Spectrum sp = to_spectrum(f);
    for_each_mode(g, [&](std::size_t n, int i, int j) {
        const double k2 = g.kx()[i] * g.kx()[i] + g.ky()[j] * g.ky()[j];
        sp[n] *= std::pow(1.0 + k2, 0.5 * s);
    });
    return from_spectrum(f.grid_ptr(), sp);
}

double fractional_sobolev_norm(const ScalarField& f, double p, double s) {
    if (s < 0.0) throw std::invalid_argument("fractional_sobolev_norm: s must be >= 0");
    if (!(p >= 1.0)) throw std::invalid_argument("fractional_sobolev_norm: p must be >= 1");
    require_finite(f, "fractional_sobolev_norm");
    return lp_norm(bessel_multiplier(f, s), p);
}

double fractional_sobolev_norm(const VectorField& v, double p, double s) {
    if (s < 0.0) throw std::invalid_argument("fractional_sobolev_norm: s must be >= 0");
    if (!(p >= 1.0)) throw std::invalid_argument("fractional_sobolev_norm: p must be >= 1");
    require_finite(v, "fractional_sobolev_norm");
    return lp_norm(VectorField(bessel_multiplier(v.x(), s), bessel_multiplier(v.y(), s)), p);
}

} // namespace nsch
