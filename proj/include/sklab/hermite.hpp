#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace sklab {

// Gauss-Hermite rule rescaled for expectations over a standard normal:
// E[f(g)] ~ sum_k weights[k] * f(nodes[k]), weights normalized to sum to 1.
class HermiteRule {
public:
    explicit HermiteRule(int order = 61);

    int order() const { return order_; }
    std::span<const double> nodes() const { return nodes_; }
    std::span<const double> weights() const { return weights_; }

    template <class F>
    double expect(F&& f) const {
        // Neumaier-compensated so the result is independent of term magnitudes
        double sum = 0.0, comp = 0.0;
        for (std::size_t k = 0; k < nodes_.size(); ++k) {
            const double term = weights_[k] * f(nodes_[k]);
            const double t = sum + term;
            comp += (std::abs(sum) >= std::abs(term)) ? (sum - t) + term : (term - t) + sum;
            sum = t;
        }
        return sum + comp;
    }

private:
    int order_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

}
