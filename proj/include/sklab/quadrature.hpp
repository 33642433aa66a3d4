#pragma once

#include <vector>

namespace sklab {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Hermite rule for the weight exp(-y^2) on (-inf, inf).
// Weights sum to sqrt(pi); nodes are symmetric about 0.
QuadratureRule gauss_hermite(int order);

// Gauss-Legendre rule on [-1, 1]. Weights sum to 2; nodes symmetric.
QuadratureRule gauss_legendre(int order);

}
