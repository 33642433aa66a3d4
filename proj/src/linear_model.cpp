#include "sklab/linear_model.hpp"

#include <cmath>
#include <stdexcept>

namespace sklab {

namespace {
void require_nonnegative(double x, const char* what) {
    if (!(x >= 0.0)) throw std::invalid_argument(std::string("LinearModelAnalytics: ") + what + " must be >= 0");
}
}

LinearModelAnalytics::LinearModelAnalytics(PhiEvaluator ev, HermiteRule rule, double h)
    : ev_(std::move(ev)), rule_(std::move(rule)), h_(h) {
    require_nonnegative(h, "h");
}

double LinearModelAnalytics::q_lin(double x) const {
    require_nonnegative(x, "x");
    const double sx = std::sqrt(x);
    const double v = -x / 2.0;
    return rule_.expect([&](double g) {
        const double du = ev_.partials(h_ + sx * g, v).du;
        return du * du;
    });
}

double LinearModelAnalytics::alpha_lin(double x) const {
    require_nonnegative(x, "x");
    const double sx = std::sqrt(x);
    const double v = -x / 2.0;
    return rule_.expect([&](double g) { return ev_.phi(h_ + sx * g, v); });
}

double LinearModelAnalytics::dq_lin_dx(double x) const {
    require_nonnegative(x, "x");
    const double sx = std::sqrt(x);
    const double v = -x / 2.0;
    return rule_.expect([&](double g) {
        const PhiPartials p = ev_.partials(h_ + sx * g, v);
        return p.duu * p.duu + p.du * p.duuu - p.du * p.duv;
    });
}

double LinearModelAnalytics::lipschitz_bound(double x_max, int grid_points) const {
    if (!(x_max > 0.0)) throw std::invalid_argument("lipschitz_bound: x_max must be > 0");
    if (grid_points < 2) throw std::invalid_argument("lipschitz_bound: need at least 2 grid points");
    double best = 0.0;
    for (int i = 0; i < grid_points; ++i) {
        const double x = x_max * static_cast<double>(i) / (grid_points - 1);
        best = std::max(best, std::abs(dq_lin_dx(x)));
    }
    return 1.05 * best;
}

double gaussian_quad_exp_moment(double u, double v) {
    if (!(v < 0.5)) throw std::invalid_argument("gaussian_quad_exp_moment: divergent for v >= 1/2");
    const double a = 1.0 - 2.0 * v;
    return std::exp(u * u / (2.0 * a)) / std::sqrt(a);
}

}
