#pragma once

#include <functional>
#include <vector>

#include "nsch/grid.hpp"

namespace nsch {

/// Nodal values of a scalar quantity on a Grid, row-major (y outer, x inner).
class ScalarField {
  public:
    ScalarField() = default;
    explicit ScalarField(GridPtr grid, double fill = 0.0);
    ScalarField(GridPtr grid, std::vector<double> values);

    const Grid& grid() const { return *grid_; }
    GridPtr grid_ptr() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    double operator()(int i, int j) const { return values_[idx(i, j)]; }
    double& operator()(int i, int j) { return values_[idx(i, j)]; }
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j) * grid_->nx() + i; }

    ScalarField& operator+=(const ScalarField& other);
    ScalarField& operator-=(const ScalarField& other);
    ScalarField& operator*=(double a);

    bool all_finite() const;
    double max_abs() const;
    double mean() const;

  private:
    GridPtr grid_;
    std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double a, ScalarField f);

/// Exact nodal product, no dealiasing.
ScalarField hadamard(const ScalarField& a, const ScalarField& b);

/// Fill from a closed form f(x, y).
ScalarField sample_field(GridPtr grid, const std::function<double(double, double)>& f);

/// Discrete L2 inner product (rectangle rule): sum a*b*dx*dy.
double inner(const ScalarField& a, const ScalarField& b);

/// Nodal L^p norm by rectangle rule, p >= 1.
double lp_norm(const ScalarField& f, double p);

void require_same_grid(const Grid& a, const Grid& b, const char* where);
void require_finite(const ScalarField& f, const char* where);

/// Two scalar components on one grid; component 0 is x, component 1 is y.
class VectorField {
  public:
    VectorField() = default;
    explicit VectorField(GridPtr grid, double fill = 0.0);
    VectorField(ScalarField x, ScalarField y);

    const Grid& grid() const { return x_.grid(); }
    GridPtr grid_ptr() const { return x_.grid_ptr(); }
    const ScalarField& x() const { return x_; }
    const ScalarField& y() const { return y_; }
    ScalarField& x() { return x_; }
    ScalarField& y() { return y_; }

    VectorField& operator+=(const VectorField& other);
    VectorField& operator-=(const VectorField& other);
    VectorField& operator*=(double a);

    bool all_finite() const { return x_.all_finite() && y_.all_finite(); }
    double max_abs() const;

  private:
    ScalarField x_, y_;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double a, VectorField v);

double inner(const VectorField& a, const VectorField& b);
double lp_norm(const VectorField& v, double p);
void require_finite(const VectorField& v, const char* where);

} // namespace nsch
