#include "nsch/config.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <sstream>

namespace nsch {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

struct Setter {
    std::function<void(RunConfig&, const std::string&, int)> set;
};

template <typename T>
T parse_number(const std::string& value, const std::string& key, int line) {
    std::istringstream ss(value);
    T out;
    ss >> out;
    if (ss.fail() || !ss.eof())
        throw ConfigError("config: line " + std::to_string(line) + ": key '" + key +
                              "': cannot parse '" + value + "'",
                          line, key);
    return out;
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = [] {
        std::map<std::string, Setter> t;
        auto num = [&t](const std::string& key, auto member) {
            t[key] = Setter{[member, key](RunConfig& c, const std::string& v, int line) {
                c.*member = parse_number<std::remove_reference_t<decltype(c.*member)>>(v, key,
                                                                                       line);
            }};
        };
        auto str = [&t](const std::string& key, std::string RunConfig::* member) {
            t[key] = Setter{[member](RunConfig& c, const std::string& v, int) { c.*member = v; }};
        };
        num("grid.nx", &RunConfig::nx);
        num("grid.ny", &RunConfig::ny);
        num("grid.lx", &RunConfig::lx);
        num("grid.ly", &RunConfig::ly);
        num("model.rho1", &RunConfig::rho1);
        num("model.rho2", &RunConfig::rho2);
        num("model.epsilon", &RunConfig::epsilon);
        str("model.eta_law", &RunConfig::eta_law);
        num("model.eta_base", &RunConfig::eta_base);
        num("model.eta_floor", &RunConfig::eta_floor);
        str("model.m_law", &RunConfig::m_law);
        num("model.m_base", &RunConfig::m_base);
        num("model.m_floor", &RunConfig::m_floor);
        num("model.eta0_min", &RunConfig::eta0_min);
        num("model.m0_min", &RunConfig::m0_min);
        num("solver.dt", &RunConfig::dt);
        num("solver.inner_tol", &RunConfig::inner_tol);
        num("solver.inner_max_iter", &RunConfig::inner_max_iter);
        num("norms.p", &RunConfig::p);
        str("norms.quadrature", &RunConfig::quadrature);
        str("run.preset", &RunConfig::preset);
        num("run.total_T", &RunConfig::total_T);
        str("run.out_dir", &RunConfig::out_dir);
        num("run.seed", &RunConfig::seed);
        num("run.snapshot_every", &RunConfig::snapshot_every);
        num("run.picard_tol", &RunConfig::picard_tol);
        num("run.picard_max_iter", &RunConfig::picard_max_iter);
        num("run.window_initial_steps", &RunConfig::window_initial_steps);
        num("run.window_max_steps", &RunConfig::window_max_steps);
        num("run.noise", &RunConfig::noise);
        num("run.noise_max_mode", &RunConfig::noise_max_mode);
        num("run.phi_mean", &RunConfig::phi_mean);
        num("run.drop_radius", &RunConfig::drop_radius);
        num("run.mms_T", &RunConfig::mms_T);
        num("run.mms_steps0", &RunConfig::mms_steps0);
        num("run.mms_halvings", &RunConfig::mms_halvings);
        return t;
    }();
    return table;
}

ViscosityLaw eta_law_from(const std::string& s) {
    if (s == "constant") return ViscosityLaw::Constant;
    if (s == "tanh") return ViscosityLaw::Tanh;
    throw ConfigError("config: model.eta_law must be 'constant' or 'tanh', got '" + s + "'", -1,
                      "model.eta_law");
}

MobilityLaw m_law_from(const std::string& s) {
    if (s == "constant") return MobilityLaw::Constant;
    if (s == "tanh") return MobilityLaw::Tanh;
    throw ConfigError("config: model.m_law must be 'constant' or 'tanh', got '" + s + "'", -1,
                      "model.m_law");
}

} // namespace

ModelParams RunConfig::make_model_params() const {
    return ModelParams(rho1, rho2, epsilon, eta_law_from(eta_law), eta_base, eta_floor,
                       m_law_from(m_law), m_base, m_floor, eta0_min, m0_min);
}

SolverConfig RunConfig::make_solver_config() const {
    SolverConfig cfg{dt, inner_tol, inner_max_iter};
    cfg.validate();
    return cfg;
}

NormConfig RunConfig::make_norm_config() const {
    TimeQuadrature q;
    if (quadrature == "trapezoid")
        q = TimeQuadrature::Trapezoid;
    else if (quadrature == "rectangle")
        q = TimeQuadrature::Rectangle;
    else
        throw ConfigError("config: norms.quadrature must be 'trapezoid' or 'rectangle', got '" +
                              quadrature + "'",
                          -1, "norms.quadrature");
    return NormConfig(p, q);
}

WindowPolicy RunConfig::make_window_policy() const {
    WindowPolicy policy;
    policy.initial_steps = window_initial_steps;
    policy.max_steps = window_max_steps;
    return policy;
}

GridPtr RunConfig::make_grid_ptr() const { return make_grid(nx, ny, lx, ly); }

void RunConfig::validate() const {
    try {
        make_grid_ptr();
        make_model_params();
        make_solver_config();
        make_norm_config();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!(total_T > 0.0)) throw ConfigError("config: run.total_T must be > 0", -1, "run.total_T");
    if (snapshot_every < 1)
        throw ConfigError("config: run.snapshot_every must be >= 1", -1, "run.snapshot_every");
    if (!(picard_tol > 0.0 && picard_tol < 1.0))
        throw ConfigError("config: run.picard_tol must be in (0,1)", -1, "run.picard_tol");
    if (picard_max_iter < 1)
        throw ConfigError("config: run.picard_max_iter must be >= 1", -1, "run.picard_max_iter");
    if (window_initial_steps < 2 || window_max_steps < window_initial_steps)
        throw ConfigError("config: window steps must satisfy 2 <= initial <= max", -1,
                          "run.window_initial_steps");
    if (!(noise >= 0.0)) throw ConfigError("config: run.noise must be >= 0", -1, "run.noise");
    if (!(phi_mean > -1.0 && phi_mean < 1.0))
        throw ConfigError("config: run.phi_mean must lie in (-1,1)", -1, "run.phi_mean");
    if (mms_steps0 < 2 || mms_halvings < 1 || !(mms_T > 0.0))
        throw ConfigError("config: mms study needs mms_steps0 >= 2, mms_halvings >= 1, mms_T > 0",
                          -1, "run.mms_steps0");
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    static const std::string known_sections[] = {"grid", "model", "solver", "norms", "run"};
    while (std::getline(in, line)) {
        ++lineno;
        const std::string s = trim(line);
        if (s.empty() || s[0] == '#' || s[0] == ';') continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw ConfigError("config: line " + std::to_string(lineno) +
                                      ": malformed section header '" + s + "'",
                                  lineno);
            section = trim(s.substr(1, s.size() - 2));
            if (std::find(std::begin(known_sections), std::end(known_sections), section) ==
                std::end(known_sections))
                throw ConfigError("config: line " + std::to_string(lineno) +
                                      ": unknown section '" + section + "'",
                                  lineno, section);
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) +
                                  ": expected 'key = value', got '" + s + "'",
                              lineno);
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (section.empty())
            throw ConfigError("config: line " + std::to_string(lineno) + ": key '" + key +
                                  "' appears before any [section] header",
                              lineno, key);
        const std::string full = section + "." + key;
        auto it = setters().find(full);
        if (it == setters().end())
            throw ConfigError("config: line " + std::to_string(lineno) + ": unknown key '" +
                                  full + "'",
                              lineno, full);
        it->second.set(cfg, value, lineno);
    }
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override: expected section.key=value, got '" + assignment + "'");
    const std::string key = trim(assignment.substr(0, eq));
    const std::string value = trim(assignment.substr(eq + 1));
    auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError("override: unknown key '" + key + "'", -1, key);
    it->second.set(cfg, value, -1);
}

} // namespace nsch
