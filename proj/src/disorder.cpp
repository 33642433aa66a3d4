#include "sklab/disorder.hpp"

#include <random>
#include <stdexcept>

namespace sklab {

namespace {
constexpr std::uint64_t kStreamCouplings = 0x636f75706c696e67ull;
constexpr std::uint64_t kStreamFields = 0x6669656c64735f6aull;

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
    return std::mt19937_64(splitmix64(seed ^ stream));
}
}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master + splitmix64(index));
}

DisorderSample sample_disorder(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_disorder: n must be >= 1");
    DisorderSample d;
    d.n = n;
    d.seed = seed;
    d.g.resize(static_cast<std::size_t>(n) * (n + 1) / 2);
    d.j_lin.resize(n);

    std::normal_distribution<double> normal(0.0, 1.0);
    auto eng_g = make_engine(seed, kStreamCouplings);
    for (auto& v : d.g) v = normal(eng_g);

    std::normal_distribution<double> normal_j(0.0, 1.0);
    auto eng_j = make_engine(seed, kStreamFields);
    for (auto& v : d.j_lin) v = normal_j(eng_j);
    return d;
}

DisorderSample DisorderSample::from_arrays(int n, std::vector<double> g, std::vector<double> j_lin,
                                           std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("DisorderSample: n must be >= 1");
    if (g.size() != static_cast<std::size_t>(n) * (n + 1) / 2 ||
        j_lin.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("DisorderSample: array sizes do not match n");
    DisorderSample d;
    d.n = n;
    d.seed = seed;
    d.g = std::move(g);
    d.j_lin = std::move(j_lin);
    return d;
}

}
