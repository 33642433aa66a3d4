#pragma once

#include <string>
#include <vector>

namespace sklab {

enum class SpinKind { Rademacher, Uniform, DiscreteSymmetric };

struct Atom {
    double value{};
    double weight{};
};

// A symmetric probability law on [-1, 1], represented as a finite atom list.
// The uniform density is discretized once by a fixed-order Gauss-Legendre rule,
// so every expectation downstream is an exact finite sum over atoms.
class SpinDistribution {
public:
    static SpinDistribution rademacher();
    static SpinDistribution uniform(int nodes = 32);
    // Atoms must form a symmetric law: every (s, w) has a partner (-s, w).
    // Weights are normalized to sum to 1.
    static SpinDistribution discrete_symmetric(std::vector<Atom> atoms);

    SpinKind kind() const { return kind_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    int atom_count() const { return static_cast<int>(atoms_.size()); }
    const std::string& name() const { return name_; }

private:
    SpinDistribution(SpinKind kind, std::vector<Atom> atoms, std::string name);

    SpinKind kind_;
    std::vector<Atom> atoms_;
    std::string name_;
};

}
