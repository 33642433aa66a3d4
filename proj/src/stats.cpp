#include "sklab/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace sklab {

MeanStdErr mean_stderr(std::span<const double> values) {
    MeanStdErr out;
    out.count = static_cast<int>(values.size());
    if (out.count == 0) return out;
    NeumaierSum acc;
    for (double v : values) acc.add(v);
    out.mean = acc.value() / out.count;
    if (out.count < 2) return out;
    NeumaierSum sq;
    for (double v : values) {
        const double d = v - out.mean;
        sq.add(d * d);
    }
    out.std_err = std::sqrt(sq.value() / (static_cast<double>(out.count) * (out.count - 1)));
    return out;
}

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SKLAB_WORKERS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

void parallel_for(int count, int workers, const std::function<void(int)>& fn) {
    workers = std::min(resolve_workers(workers), count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}
