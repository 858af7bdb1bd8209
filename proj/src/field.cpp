#include "nsch/field.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nsch {

ScalarField::ScalarField(GridPtr grid, double fill)
    : grid_(std::move(grid)), values_(grid_->size(), fill) {}

ScalarField::ScalarField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_->size())
        throw std::invalid_argument("ScalarField: values size does not match grid");
}

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
    if (a != b) throw std::invalid_argument(std::string(where) + ": grid mismatch");
}

void require_finite(const ScalarField& f, const char* where) {
    if (!f.all_finite()) throw std::domain_error(std::string(where) + ": non-finite input field");
}

void require_finite(const VectorField& v, const char* where) {
    if (!v.all_finite()) throw std::domain_error(std::string(where) + ": non-finite input field");
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
    require_same_grid(grid(), other.grid(), "ScalarField::operator+=");
    for (std::size_t n = 0; n < values_.size(); ++n) values_[n] += other.values_[n];
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
    require_same_grid(grid(), other.grid(), "ScalarField::operator-=");
    for (std::size_t n = 0; n < values_.size(); ++n) values_[n] -= other.values_[n];
    return *this;
}

ScalarField& ScalarField::operator*=(double a) {
    for (double& v : values_) v *= a;
    return *this;
}

bool ScalarField::all_finite() const {
    for (double v : values_)
        if (!std::isfinite(v)) return false;
    return true;
}

double ScalarField::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

double ScalarField::mean() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s / static_cast<double>(values_.size());
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double a, ScalarField f) { return f *= a; }

ScalarField hadamard(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a.grid(), b.grid(), "hadamard");
    ScalarField out(a.grid_ptr());
    for (std::size_t n = 0; n < out.values().size(); ++n)
        out.values()[n] = a.values()[n] * b.values()[n];
    return out;
}

ScalarField sample_field(GridPtr grid, const std::function<double(double, double)>& f) {
    ScalarField out(grid);
    const Grid& g = *grid;
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i) out(i, j) = f(g.x(i), g.y(j));
    return out;
}

double inner(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a.grid(), b.grid(), "inner");
    double s = 0.0;
    for (std::size_t n = 0; n < a.values().size(); ++n) s += a.values()[n] * b.values()[n];
    return s * a.grid().cell_area();
}

double lp_norm(const ScalarField& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    double s = 0.0;
    if (p == 2.0) {
        for (double v : f.values()) s += v * v;
    } else {
        for (double v : f.values()) s += std::pow(std::abs(v), p);
    }
    return std::pow(s * f.grid().cell_area(), 1.0 / p);
}

VectorField::VectorField(GridPtr grid, double fill) : x_(grid, fill), y_(std::move(grid), fill) {}

VectorField::VectorField(ScalarField x, ScalarField y) : x_(std::move(x)), y_(std::move(y)) {
    require_same_grid(x_.grid(), y_.grid(), "VectorField");
}

VectorField& VectorField::operator+=(const VectorField& other) {
    x_ += other.x_;
    y_ += other.y_;
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) {
    x_ -= other.x_;
    y_ -= other.y_;
    return *this;
}

VectorField& VectorField::operator*=(double a) {
    x_ *= a;
    y_ *= a;
    return *this;
}

double VectorField::max_abs() const { return std::max(x_.max_abs(), y_.max_abs()); }

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double a, VectorField v) { return v *= a; }

double inner(const VectorField& a, const VectorField& b) {
    return inner(a.x(), b.x()) + inner(a.y(), b.y());
}

double lp_norm(const VectorField& v, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    double s = 0.0;
    const auto& vx = v.x().values();
    const auto& vy = v.y().values();
    for (std::size_t n = 0; n < vx.size(); ++n) {
        const double mag = std::hypot(vx[n], vy[n]);
        s += (p == 2.0) ? mag * mag : std::pow(mag, p);
    }
    return std::pow(s * v.grid().cell_area(), 1.0 / p);
}

} // namespace nsch
