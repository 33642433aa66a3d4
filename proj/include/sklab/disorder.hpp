#pragma once

#include <cstdint>
#include <vector>

namespace sklab {

// One quenched realization of the Gaussian environment: couplings g_ij (i <= j)
// and linear fields J_i, drawn from two independent streams.
//
// g is packed in growing-principal-minor order, column block m holds
// (0,m), (1,m), ..., (m,m). With a fixed seed this makes the size-n arrays a
// prefix of the size-n' arrays for n < n', so runs at different n share their
// disorder prefix (common random numbers across an n-sweep).
struct DisorderSample {
    int n{};
    std::uint64_t seed{};
    std::vector<double> g;      // n(n+1)/2 entries
    std::vector<double> j_lin;  // n entries

    double g_at(int i, int j) const {
        if (i > j) std::swap(i, j);
        return g[static_cast<std::size_t>(j) * (j + 1) / 2 + i];
    }

    static DisorderSample from_arrays(int n, std::vector<double> g, std::vector<double> j_lin,
                                      std::uint64_t seed = 0);
};

DisorderSample sample_disorder(int n, std::uint64_t seed);

// splitmix64-style mix of (master, index) for per-sample deterministic seeding
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}
