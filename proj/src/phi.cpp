#include "sklab/phi.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace sklab {

namespace {
void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string("PhiEvaluator: non-finite ") + what);
}
}

PhiEvaluator::PhiEvaluator(SpinDistribution dist) : dist_(std::move(dist)) {
    s_.reserve(dist_.atom_count());
    s2_.reserve(dist_.atom_count());
    logw_.reserve(dist_.atom_count());
    for (const auto& a : dist_.atoms()) {
        s_.push_back(a.value);
        s2_.push_back(a.value * a.value);
        logw_.push_back(std::log(a.weight));
    }
}

double PhiEvaluator::phi(double u, double v) const {
    require_finite(u, "u");
    require_finite(v, "v");
    const std::size_t na = s_.size();
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < na; ++k) m = std::max(m, u * s_[k] + v * s2_[k]);
    double acc = 0.0;
    for (std::size_t k = 0; k < na; ++k)
        acc += std::exp(logw_[k] + u * s_[k] + v * s2_[k] - m);
    return m + std::log(acc);
}

PhiPartials PhiEvaluator::partials(double u, double v) const {
    require_finite(u, "u");
    require_finite(v, "v");
    const std::size_t na = s_.size();
    std::vector<double> p(na);
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < na; ++k) m = std::max(m, u * s_[k] + v * s2_[k]);
    double z = 0.0;
    for (std::size_t k = 0; k < na; ++k) {
        p[k] = std::exp(logw_[k] + u * s_[k] + v * s2_[k] - m);
        z += p[k];
    }
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t k = 0; k < na; ++k) {
        p[k] /= z;
        m1 += p[k] * s_[k];
        m2 += p[k] * s2_[k];
    }
    // central moments for numerical stability of the higher cumulants
    double c2 = 0.0, c3 = 0.0, c4 = 0.0, cuv = 0.0;
    for (std::size_t k = 0; k < na; ++k) {
        const double d = s_[k] - m1;
        const double d2 = d * d;
        c2 += p[k] * d2;
        c3 += p[k] * d2 * d;
        c4 += p[k] * d2 * d2;
        cuv += p[k] * d * (s2_[k] - m2);
    }
    PhiPartials out;
    out.du = m1;
    out.duu = c2;
    out.duuu = c3;
    out.duuuu = c4 - 3.0 * c2 * c2;
    out.dv = m2;
    out.duv = cuv;
    return out;
}

double PhiEvaluator::psi(double u, double v, double lambda) const {
    require_finite(u, "u");
    require_finite(v, "v");
    require_finite(lambda, "lambda");
    const std::size_t na = s_.size();
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < na; ++j)
        for (std::size_t k = 0; k < na; ++k)
            m = std::max(m, u * (s_[j] + s_[k]) + v * (s2_[j] + s2_[k]) + lambda * s_[j] * s_[k]);
    double acc = 0.0;
    for (std::size_t j = 0; j < na; ++j)
        for (std::size_t k = 0; k < na; ++k)
            acc += std::exp(logw_[j] + logw_[k] + u * (s_[j] + s_[k]) + v * (s2_[j] + s2_[k]) +
                            lambda * s_[j] * s_[k] - m);
    return m + std::log(acc);
}

}
