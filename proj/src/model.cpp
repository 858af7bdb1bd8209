#include "nsch/model.hpp"

#include <cmath>
#include <stdexcept>

namespace nsch {

namespace {

double sech2(double s) {
    const double c = std::cosh(s);
    return 1.0 / (c * c);
}

} // namespace

ModelParams::ModelParams(double rho1, double rho2, double epsilon, ViscosityLaw eta_law,
                         double eta_base, double eta_floor, MobilityLaw m_law, double m_base,
                         double m_floor, double eta0_min, double m0_min)
    : rho1_(rho1), rho2_(rho2), epsilon_(epsilon), eta_law_(eta_law), eta_base_(eta_base),
      eta_floor_(eta_floor), m_law_(m_law), m_base_(m_base), m_floor_(m_floor),
      eta0_min_(eta0_min), m0_min_(m0_min) {
    if (!(rho1_ > 0.0) || !(rho2_ > 0.0))
        throw std::invalid_argument("ModelParams: specific densities must be positive");
    if (!(epsilon_ > 0.0)) throw std::invalid_argument("ModelParams: epsilon must be positive");
    if (!(eta0_min_ > 0.0) || !(m0_min_ > 0.0))
        throw std::invalid_argument("ModelParams: lower bounds eta0_min, m0_min must be positive");
    // Lower bounds checked by dense sampling on [-2,2].
    const int n = 4001;
    for (int i = 0; i < n; ++i) {
        const double s = -2.0 + 4.0 * i / (n - 1);
        if (eta(s) < eta0_min_)
            throw std::invalid_argument("ModelParams: eta(s) drops below eta0_min on [-2,2]");
        if (m(s) < m0_min_)
            throw std::invalid_argument("ModelParams: m(s) drops below m0_min on [-2,2]");
    }
}

double ModelParams::eta(double s) const {
    switch (eta_law_) {
        case ViscosityLaw::Constant: return eta_base_;
        case ViscosityLaw::Tanh: return eta_base_ * (1.0 + 0.5 * std::tanh(s)) + eta_floor_;
    }
    return eta_base_;
}

double ModelParams::eta_prime(double s) const {
    switch (eta_law_) {
        case ViscosityLaw::Constant: return 0.0;
        case ViscosityLaw::Tanh: return 0.5 * eta_base_ * sech2(s);
    }
    return 0.0;
}

double ModelParams::m(double s) const {
    switch (m_law_) {
        case MobilityLaw::Constant: return m_base_;
        case MobilityLaw::Tanh: return m_base_ * (1.0 + 0.5 * std::tanh(s)) + m_floor_;
    }
    return m_base_;
}

double ModelParams::m_prime(double s) const {
    switch (m_law_) {
        case MobilityLaw::Constant: return 0.0;
        case MobilityLaw::Tanh: return 0.5 * m_base_ * sech2(s);
    }
    return 0.0;
}

Coefficient coefficient_from_name(const std::string& name) {
    if (name == "rho") return Coefficient::Rho;
    if (name == "rho_prime") return Coefficient::RhoPrime;
    if (name == "eta") return Coefficient::Eta;
    if (name == "eta_prime") return Coefficient::EtaPrime;
    if (name == "m") return Coefficient::M;
    if (name == "m_prime") return Coefficient::MPrime;
    if (name == "W") return Coefficient::W;
    if (name == "W_prime") return Coefficient::WPrime;
    throw std::invalid_argument("coeff_eval: unknown selector '" + name + "'");
}

ScalarField coeff_eval(Coefficient which, const ScalarField& phi, const ModelParams& params) {
    require_finite(phi, "coeff_eval");
    ScalarField out(phi.grid_ptr());
    const auto& in = phi.values();
    auto& v = out.values();
    switch (which) {
        case Coefficient::Rho:
            for (std::size_t n = 0; n < in.size(); ++n) v[n] = params.rho(in[n]);
            break;
        case Coefficient::RhoPrime:
            for (std::size_t n = 0; n < in.size(); ++n) v[n] = params.rho_prime();
            break;
        case Coefficient::Eta:
            for (std::size_t n = 0; n < in.size(); ++n) v[n] = params.eta(in[n]);
            break;
        case Coefficient::EtaPrime:
            for (std::size_t n = 0; n < in.size(); ++n) v[n] = params.eta_prime(in[n]);
            break;
        case Coefficient::M:
            for (std::size_t n = 0; n < in.size(); ++n) v[n] = params.m(in[n]);
            break;
        case Coefficient::MPrime:
            for (std::size_t n = 0; n < in.size(); ++n) v[n] = params.m_prime(in[n]);
            break;
        case Coefficient::W:
            for (std::size_t n = 0; n < in.size(); ++n) v[n] = params.W(in[n]);
            break;
        case Coefficient::WPrime:
            for (std::size_t n = 0; n < in.size(); ++n) v[n] = params.W_prime(in[n]);
            break;
    }
    return out;
}

ScalarField chemical_potential(const ScalarField& phi, const ModelParams& params) {
    require_finite(phi, "chemical_potential");
    ScalarField mu = (-params.epsilon()) * laplacian(phi);
    mu += (1.0 / params.epsilon()) * dealias(coeff_eval(Coefficient::WPrime, phi, params));
    return mu;
}

double free_energy(const ScalarField& phi, const ModelParams& params) {
    const VectorField g = gradient(phi);
    const double grad2 = inner(g, g);
    double wsum = 0.0;
    for (double s : phi.values()) wsum += params.W(s);
    wsum *= phi.grid().cell_area();
    return 0.5 * params.epsilon() * grad2 + wsum / params.epsilon();
}

} // namespace nsch
