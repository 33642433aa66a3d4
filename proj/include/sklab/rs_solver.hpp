#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sklab/linear_model.hpp"

namespace sklab {

// Replica-symmetric solution of q = qbar(2qt) for one (t, h, spin law) instance.
struct RSSolution {
    double t{};
    double h{};
    double q_c{};        // fixed point
    double alpha_inf{};  // (t/2) q_c^2 + alpha_lin(2 q_c t)
    double t_c{};        // sufficient uniqueness threshold 1/(4C)
    int iterations{};
    double residual{};   // |q_c - qbar(2 q_c t)|
    bool converged{};
    bool unique_regime{};  // t <= t_c; above t_c no uniqueness claim is made
};

struct FixedPointOptions {
    double tol = 1e-12;
    int max_iter = 10000;
    std::optional<double> initial_q{};   // default qbar(0)
    std::optional<double> known_t_c{};   // skip the Lipschitz scan when already computed
    double lipschitz_xmax = 4.0;
};

// Fixed-point iteration q <- qbar(2qt) from q0 = qbar(0); the map is a
// (1/2)-contraction below t_c, so plain iteration is unconditionally stable there.
RSSolution solve_fixed_point(const LinearModelAnalytics& la, double t,
                             const FixedPointOptions& opts = {});

double alpha_infinity(const LinearModelAnalytics& la, double t, double q);

struct FScanPoint {
    double q{};
    double f{};        // alpha_lin(2qt) + (t/2) q^2
    double f_prime{};  // t (q - qbar(2qt))
};

std::vector<FScanPoint> f_scan(const LinearModelAnalytics& la, double t,
                               std::span<const double> q_grid);

// 1/(4C); a sufficient high-temperature threshold, not a claim about criticality
double t_c_estimate(const LinearModelAnalytics& la, double x_max = 4.0);

}
