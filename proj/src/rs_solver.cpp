#include "sklab/rs_solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sklab {

double t_c_estimate(const LinearModelAnalytics& la, double x_max) {
    const double c = la.lipschitz_bound(x_max);
    if (c <= 0.0) return std::numeric_limits<double>::infinity();  // degenerate law
    return 1.0 / (4.0 * c);
}

RSSolution solve_fixed_point(const LinearModelAnalytics& la, double t,
                             const FixedPointOptions& opts) {
    if (!(t >= 0.0)) throw std::invalid_argument("solve_fixed_point: t must be >= 0");

    RSSolution sol;
    sol.t = t;
    sol.h = la.field();
    sol.t_c = opts.known_t_c ? *opts.known_t_c : t_c_estimate(la, opts.lipschitz_xmax);
    sol.unique_regime = t <= sol.t_c;

    double q = opts.initial_q ? *opts.initial_q : la.q_lin(0.0);
    double next = la.q_lin(2.0 * q * t);
    int iter = 0;
    while (std::abs(next - q) > opts.tol && iter < opts.max_iter) {
        q = next;
        next = la.q_lin(2.0 * q * t);
        ++iter;
    }
    sol.q_c = q;
    sol.iterations = iter;
    sol.residual = std::abs(next - q);
    sol.converged = sol.residual <= opts.tol;
    sol.alpha_inf = alpha_infinity(la, t, q);
    return sol;
}

double alpha_infinity(const LinearModelAnalytics& la, double t, double q) {
    return 0.5 * t * q * q + la.alpha_lin(2.0 * q * t);
}

std::vector<FScanPoint> f_scan(const LinearModelAnalytics& la, double t,
                               std::span<const double> q_grid) {
    std::vector<FScanPoint> out;
    out.reserve(q_grid.size());
    for (double q : q_grid) {
        FScanPoint p;
        p.q = q;
        p.f = la.alpha_lin(2.0 * q * t) + 0.5 * t * q * q;
        p.f_prime = t * (q - la.q_lin(2.0 * q * t));
        out.push_back(p);
    }
    return out;
}

}
