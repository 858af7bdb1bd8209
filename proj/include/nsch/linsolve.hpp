#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nsch {

/// Iterative solve failed; carries the relative residual history.
class SolveError : public std::runtime_error {
  public:
    SolveError(const std::string& what, std::vector<double> history, int time_index = -1)
        : std::runtime_error(what), residual_history(std::move(history)),
          time_index(time_index) {}
    std::vector<double> residual_history;
    int time_index;
};

struct PcgOptions {
    double tol = 1e-10;
    int max_iter = 500;
    /// Stopping is ||weight .* r|| <= tol * rhs_scale. Empty weight means 1;
    /// rhs_scale < 0 means use ||weight .* b||.
    std::vector<double> residual_weight;
    double rhs_scale = -1.0;
};

struct PcgResult {
    std::vector<double> x;
    int iterations = 0;
    std::vector<double> residual_history;
};

/// Preconditioned conjugate gradients for an SPD operator given as a callback.
/// Deterministic given inputs. Throws SolveError when the iteration cap is
/// reached or the operator is detected to be indefinite.
PcgResult pcg_solve(const std::function<std::vector<double>(const std::vector<double>&)>& apply,
                    const std::function<std::vector<double>(const std::vector<double>&)>& precond,
                    const std::vector<double>& b, std::vector<double> x0,
                    const PcgOptions& opts);

} // namespace nsch
