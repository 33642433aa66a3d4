#pragma once

#include "sklab/spin_distribution.hpp"

namespace sklab {

// Partial derivatives of the mixed Laplace exponent phi(u,v) = log E[exp(u*s + v*s^2)],
// computed as cumulants of the spin under the tilted measure dmu_{u,v} ~ e^{u*s+v*s^2} dmu:
//   du    = E_t[s]                     duu  = Var_t(s)
//   duuu  = third central moment       duuuu = fourth cumulant
//   dv    = E_t[s^2]                   duv  = Cov_t(s, s^2)
struct PhiPartials {
    double du{};
    double duu{};
    double duuu{};
    double duuuu{};
    double dv{};
    double duv{};
};

// Evaluates phi, its partials, and the two-replica exponent psi for one spin law.
// Immutable after construction; all methods are pure and safe for concurrent use.
class PhiEvaluator {
public:
    explicit PhiEvaluator(SpinDistribution dist);

    const SpinDistribution& dist() const { return dist_; }

    // phi(u,v) = log sum_k w_k exp(u*s_k + v*s_k^2), max-shifted before exponentiation
    double phi(double u, double v) const;

    PhiPartials partials(double u, double v) const;

    // psi(u,v,lambda) = log sum_{j,k} w_j w_k exp(u(s_j+s_k) + v(s_j^2+s_k^2) + lambda s_j s_k)
    double psi(double u, double v, double lambda) const;

private:
    SpinDistribution dist_;
    std::vector<double> s_, s2_, logw_;
};

}
