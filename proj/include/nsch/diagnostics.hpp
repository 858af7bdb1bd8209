#pragma once

#include <utility>
#include <vector>

#include "nsch/trajectory.hpp"

namespace nsch {

enum class TimeQuadrature { Trapezoid, Rectangle };

/// Exponent and quadrature for the trajectory/data norms. The phi exponent is
/// constrained to (4,6); `unchecked` exists for test comparisons only.
struct NormConfig {
    double p = 4.5;
    TimeQuadrature quadrature = TimeQuadrature::Trapezoid;

    NormConfig() = default;
    NormConfig(double p_, TimeQuadrature q = TimeQuadrature::Trapezoid);
    static NormConfig unchecked(double p_, TimeQuadrature q = TimeQuadrature::Trapezoid);
};

struct NormReport {
    double v_norm = 0.0;
    double phi_norm = 0.0;
    double y1_norm = 0.0;
    double y2_norm = 0.0;
    std::vector<double> energy_series;
    std::vector<double> mass_series;
    std::vector<double> div_residual_series;
    std::vector<double> max_abs_phi_series;
};

/// Solution-space norm of one window trajectory:
///   v:   sqrt(int ||dtv||_L2^2) + sqrt(int ||v||_H2^2) + ||v(0)||_{H^1}
///   phi: (int ||dtphi||_p^p)^{1/p} + (int ||phi||_{W^4_p}^p)^{1/p}
///        + ||phi(0)||_{H^{4-4/p}_p}
/// Time derivatives are the backward-difference series of the trajectory.
std::pair<double, double> xt_norm(const WindowTrajectory& traj, const NormConfig& cfg);

/// Combined X_T distance (v part + phi part) of two trajectories on the same
/// grid and time grid; the initial-datum term uses the datum difference.
double xt_distance(const WindowTrajectory& a, const WindowTrajectory& b, const NormConfig& cfg);

/// Data-space norms: y1 = sqrt(int ||f||_L2^2), y2 = (int ||g||_p^p)^{1/p}.
std::pair<double, double> yt_norm(const WindowRhs& rhs, const NormConfig& cfg);
double yt_distance(const WindowRhs& a, const WindowRhs& b, const NormConfig& cfg);

/// E = int rho(phi)|v|^2/2 + eps|grad phi|^2/2 + W(phi)/eps.
double energy(const VectorField& v, const ScalarField& phi, const ModelParams& params);

double mass(const ScalarField& phi);
double div_residual(const VectorField& v);

double time_quadrature(const std::vector<double>& samples, double dt, TimeQuadrature q);

} // namespace nsch
