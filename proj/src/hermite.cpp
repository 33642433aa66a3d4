#include "sklab/hermite.hpp"

#include <cmath>
#include <stdexcept>

#include "sklab/quadrature.hpp"

namespace sklab {

HermiteRule::HermiteRule(int order) : order_(order) {
    if (order < 1) throw std::invalid_argument("HermiteRule: order must be >= 1");
    auto raw = gauss_hermite(order);
    nodes_.resize(order);
    weights_.resize(order);
    const double root2 = std::sqrt(2.0);
    double total = 0.0;
    for (int k = 0; k < order; ++k) {
        nodes_[k] = root2 * raw.nodes[k];  // physicists' -> probabilists' abscissae
        total += raw.weights[k];
    }
    for (int k = 0; k < order; ++k) weights_[k] = raw.weights[k] / total;
}

}
