#pragma once

#include "sklab/hermite.hpp"
#include "sklab/phi.hpp"

namespace sklab {

// Closed-form analytics of the linear (one-body) random-field model:
// qbar(x), alpha_lin(x), dqbar/dx, and the Lipschitz constant feeding t_c.
class LinearModelAnalytics {
public:
    LinearModelAnalytics(PhiEvaluator ev, HermiteRule rule, double h);

    const PhiEvaluator& evaluator() const { return ev_; }
    const HermiteRule& rule() const { return rule_; }
    double field() const { return h_; }

    // mean overlap qbar(x) = E[(phi_u)^2(h + sqrt(x) g, -x/2)], in [0, 1]
    double q_lin(double x) const;

    // free energy alpha_lin(x) = E[phi(h + sqrt(x) g, -x/2)]
    double alpha_lin(double x) const;

    // d qbar/dx = E[phi_uu^2 + phi_u phi_uuu - phi_u phi_uv](h + sqrt(x) g, -x/2)
    double dq_lin_dx(double x) const;

    // C with |dqbar/dx| <= C on [0, x_max]: grid maximum inflated by 5%
    double lipschitz_bound(double x_max = 4.0, int grid_points = 2001) const;

private:
    PhiEvaluator ev_;
    HermiteRule rule_;
    double h_;
};

// E[exp(u*g + v*g^2)] for g ~ N(0,1): exp(u^2 / (2(1-2v))) / sqrt(1-2v), requires v < 1/2
double gaussian_quad_exp_moment(double u, double v);

}
