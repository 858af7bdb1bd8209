#include "nsch/linsolve.hpp"

#include <cmath>

namespace nsch {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) s += a[n] * b[n];
    return s;
}

double weighted_norm(const std::vector<double>& r, const std::vector<double>& w) {
    double s = 0.0;
    if (w.empty()) {
        for (double v : r) s += v * v;
    } else {
        for (std::size_t n = 0; n < r.size(); ++n) {
            const double z = w[n] * r[n];
            s += z * z;
        }
    }
    return std::sqrt(s);
}

void axpy(std::vector<double>& y, double a, const std::vector<double>& x) {
    for (std::size_t n = 0; n < y.size(); ++n) y[n] += a * x[n];
}

} // namespace

PcgResult pcg_solve(const std::function<std::vector<double>(const std::vector<double>&)>& apply,
                    const std::function<std::vector<double>(const std::vector<double>&)>& precond,
                    const std::vector<double>& b, std::vector<double> x0,
                    const PcgOptions& opts) {
    PcgResult res;
    const double scale = opts.rhs_scale >= 0.0 ? opts.rhs_scale : weighted_norm(b, opts.residual_weight);
    if (scale == 0.0) {
        res.x.assign(b.size(), 0.0);
        return res;
    }
    const double target = opts.tol * scale;

    res.x = x0.empty() ? std::vector<double>(b.size(), 0.0) : std::move(x0);
    std::vector<double> r = apply(res.x);
    for (std::size_t n = 0; n < r.size(); ++n) r[n] = b[n] - r[n];

    int restarts = 0;
    while (true) {
        double rnorm = weighted_norm(r, opts.residual_weight);
        res.residual_history.push_back(rnorm / scale);
        if (rnorm <= target) return res;

        std::vector<double> z = precond(r);
        std::vector<double> p = z;
        double rz = dot(r, z);

        bool converged = false;
        while (res.iterations < opts.max_iter) {
            const std::vector<double> q = apply(p);
            const double pq = dot(p, q);
            if (!(pq > 0.0))
                throw SolveError("pcg_solve: operator not positive definite (p.Ap = " +
                                     std::to_string(pq) + ")",
                                 res.residual_history);
            const double alpha = rz / pq;
            axpy(res.x, alpha, p);
            axpy(r, -alpha, q);
            ++res.iterations;

            rnorm = weighted_norm(r, opts.residual_weight);
            res.residual_history.push_back(rnorm / scale);
            if (rnorm <= target) {
                converged = true;
                break;
            }
            z = precond(r);
            const double rz_new = dot(r, z);
            const double beta = rz_new / rz;
            rz = rz_new;
            for (std::size_t n = 0; n < p.size(); ++n) p[n] = z[n] + beta * p[n];
        }

        // Recompute the true residual; the recurrence may have drifted.
        r = apply(res.x);
        for (std::size_t n = 0; n < r.size(); ++n) r[n] = b[n] - r[n];
        const double true_norm = weighted_norm(r, opts.residual_weight);
        if (true_norm <= target) return res;
        if (!converged || restarts >= 2)
            throw SolveError("pcg_solve: no convergence after " +
                                 std::to_string(res.iterations) + " iterations (residual " +
                                 std::to_string(true_norm / scale) + ")",
                             res.residual_history);
        ++restarts;
    }
}

} // namespace nsch
