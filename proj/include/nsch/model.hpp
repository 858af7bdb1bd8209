#pragma once

#include <string>

#include "nsch/field.hpp"
#include "nsch/spectral_ops.hpp"

namespace nsch {

enum class ViscosityLaw { Constant, Tanh };
enum class MobilityLaw { Constant, Tanh };

/// Physical parameters and constitutive laws rho, eta, m, W.
///
/// rho(s) = (rho1+rho2)/2 + (rho2-rho1)/2 * s  (affine, exact).
/// Tanh law: base*(1 + 0.5*tanh(s)) + floor; Constant law: base.
/// W(s) = (1-s^2)^2/4, the smooth double well with minima at +-1.
class ModelParams {
  public:
    ModelParams(double rho1, double rho2, double epsilon,
                ViscosityLaw eta_law = ViscosityLaw::Tanh, double eta_base = 1.0,
                double eta_floor = 0.1, MobilityLaw m_law = MobilityLaw::Constant,
                double m_base = 0.02, double m_floor = 0.005, double eta0_min = 1e-3,
                double m0_min = 1e-6);

    double rho1() const { return rho1_; }
    double rho2() const { return rho2_; }
    double epsilon() const { return epsilon_; }
    double eta0_min() const { return eta0_min_; }
    double m0_min() const { return m0_min_; }

    double rho(double s) const { return 0.5 * (rho1_ + rho2_) + 0.5 * (rho2_ - rho1_) * s; }
    double rho_prime() const { return 0.5 * (rho2_ - rho1_); }
    bool matched_density() const { return rho_prime() == 0.0; }

    double eta(double s) const;
    double eta_prime(double s) const;
    double m(double s) const;
    double m_prime(double s) const;
    double W(double s) const { return 0.25 * (1.0 - s * s) * (1.0 - s * s); }
    double W_prime(double s) const { return s * (s * s - 1.0); }

  private:
    double rho1_, rho2_, epsilon_;
    ViscosityLaw eta_law_;
    double eta_base_, eta_floor_;
    MobilityLaw m_law_;
    double m_base_, m_floor_;
    double eta0_min_, m0_min_;
};

enum class Coefficient { Rho, RhoPrime, Eta, EtaPrime, M, MPrime, W, WPrime };

Coefficient coefficient_from_name(const std::string& name);

/// Pointwise nodal evaluation of the selected coefficient at phi.
ScalarField coeff_eval(Coefficient which, const ScalarField& phi, const ModelParams& params);

/// mu = -eps*laplacian(phi) + W'(phi)/eps, nonlinear term dealiased.
ScalarField chemical_potential(const ScalarField& phi, const ModelParams& params);

/// Free energy integrand for diagnostics: eps|grad phi|^2/2 + W(phi)/eps.
double free_energy(const ScalarField& phi, const ModelParams& params);

} // namespace nsch
