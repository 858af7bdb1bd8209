#pragma once

#include <memory>
#include <vector>

namespace nsch {

/// Uniform periodic rectangle [0,lx) x [0,ly) with nx x ny nodes and the
/// wavenumber tables of the Fourier basis exp(i(kx*x + ky*y)).
class Grid {
  public:
    Grid(int nx, int ny, double lx, double ly);

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double lx() const { return lx_; }
    double ly() const { return ly_; }
    double dx() const { return lx_ / nx_; }
    double dy() const { return ly_ / ny_; }
    double cell_area() const { return dx() * dy(); }
    double area() const { return lx_ * ly_; }
    std::size_t size() const { return static_cast<std::size_t>(nx_) * ny_; }

    double x(int i) const { return dx() * i; }
    double y(int j) const { return dy() * j; }

    /// kx[i] = 2*pi*m/lx with m in [-nx/2, nx/2); same for ky.
    const std::vector<double>& kx() const { return kx_; }
    const std::vector<double>& ky() const { return ky_; }

    /// Wavenumbers used for odd-order derivatives: identical to kx/ky except
    /// the Nyquist entry is zeroed, which keeps grad/div exactly skew-adjoint
    /// on real data.
    const std::vector<double>& kx_deriv() const { return kx_deriv_; }
    const std::vector<double>& ky_deriv() const { return ky_deriv_; }

    bool operator==(const Grid& other) const {
        return nx_ == other.nx_ && ny_ == other.ny_ && lx_ == other.lx_ && ly_ == other.ly_;
    }
    bool operator!=(const Grid& other) const { return !(*this == other); }

  private:
    int nx_, ny_;
    double lx_, ly_;
    std::vector<double> kx_, ky_, kx_deriv_, ky_deriv_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(int nx, int ny, double lx, double ly);

} // namespace nsch
