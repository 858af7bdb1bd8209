#include "nsch/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nsch {

Grid::Grid(int nx, int ny, double lx, double ly) : nx_(nx), ny_(ny), lx_(lx), ly_(ly) {
    if (nx < 8 || ny < 8 || nx % 2 != 0 || ny % 2 != 0)
        throw std::invalid_argument("Grid: nx, ny must be even and >= 8, got " +
                                    std::to_string(nx) + " x " + std::to_string(ny));
    if (!(lx > 0.0) || !(ly > 0.0))
        throw std::invalid_argument("Grid: domain lengths must be positive");

    const double two_pi = 2.0 * std::numbers::pi;
    kx_.resize(nx);
    kx_deriv_.resize(nx);
    for (int i = 0; i < nx; ++i) {
        const int m = (i < nx / 2) ? i : i - nx;
        kx_[i] = two_pi * m / lx;
        kx_deriv_[i] = (i == nx / 2) ? 0.0 : kx_[i];
    }
    ky_.resize(ny);
    ky_deriv_.resize(ny);
    for (int j = 0; j < ny; ++j) {
        const int m = (j < ny / 2) ? j : j - ny;
        ky_[j] = two_pi * m / ly;
        ky_deriv_[j] = (j == ny / 2) ? 0.0 : ky_[j];
    }
}

GridPtr make_grid(int nx, int ny, double lx, double ly) {
    return std::make_shared<const Grid>(nx, ny, lx, ly);
}

} // namespace nsch
