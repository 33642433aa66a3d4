#include "sklab/spin_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sklab/quadrature.hpp"

namespace sklab {

namespace {

void validate_symmetric(const std::vector<Atom>& atoms) {
    if (atoms.empty()) throw std::invalid_argument("spin distribution: empty atom list");
    double total = 0.0;
    for (const auto& a : atoms) {
        if (!std::isfinite(a.value) || !std::isfinite(a.weight))
            throw std::invalid_argument("spin distribution: non-finite atom");
        if (std::abs(a.value) > 1.0)
            throw std::invalid_argument("spin distribution: atom value outside [-1, 1]");
        if (a.weight <= 0.0)
            throw std::invalid_argument("spin distribution: atom weight must be > 0");
        total += a.weight;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("spin distribution: weights must sum to 1");
    // every (s, w) needs a mirror atom (-s, w)
    for (const auto& a : atoms) {
        bool found = false;
        for (const auto& b : atoms) {
            if (std::abs(b.value + a.value) <= 1e-12 && std::abs(b.weight - a.weight) <= 1e-12) {
                found = true;
                break;
            }
        }
        if (!found)
            throw std::invalid_argument("spin distribution: law is not symmetric about 0");
    }
}

}  // namespace

SpinDistribution::SpinDistribution(SpinKind kind, std::vector<Atom> atoms, std::string name)
    : kind_(kind), atoms_(std::move(atoms)), name_(std::move(name)) {
    std::sort(atoms_.begin(), atoms_.end(),
              [](const Atom& a, const Atom& b) { return a.value < b.value; });
    validate_symmetric(atoms_);
}

SpinDistribution SpinDistribution::rademacher() {
    return SpinDistribution(SpinKind::Rademacher, {{-1.0, 0.5}, {1.0, 0.5}}, "rademacher");
}

SpinDistribution SpinDistribution::uniform(int nodes) {
    if (nodes < 2 || nodes % 2 != 0)
        throw std::invalid_argument("uniform spin law: node count must be even and >= 2");
    auto rule = gauss_legendre(nodes);
    // density 1/2 on [-1,1]; mirror the positive half so symmetry is exact
    std::vector<Atom> atoms(nodes);
    for (int i = 0; i < nodes / 2; ++i) {
        const double v = rule.nodes[nodes - 1 - i];
        const double w = rule.weights[nodes - 1 - i] / 2.0;
        atoms[nodes - 1 - i] = {v, w};
        atoms[i] = {-v, w};
    }
    double total = 0.0;
    for (const auto& a : atoms) total += a.weight;
    for (auto& a : atoms) a.weight /= total;
    return SpinDistribution(SpinKind::Uniform, std::move(atoms),
                            "uniform:" + std::to_string(nodes));
}

SpinDistribution SpinDistribution::discrete_symmetric(std::vector<Atom> atoms) {
    double total = 0.0;
    for (const auto& a : atoms) total += a.weight;
    if (total > 0.0) {
        for (auto& a : atoms) a.weight /= total;
    }
    return SpinDistribution(SpinKind::DiscreteSymmetric, std::move(atoms), "discrete");
}

}
