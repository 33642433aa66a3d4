#pragma once

#include <cmath>
#include <functional>
#include <span>

namespace sklab {

// Neumaier-compensated accumulator; summation order is fixed by the caller,
// so reductions are independent of thread scheduling.
struct NeumaierSum {
    double sum{};
    double comp{};

    void add(double term) {
        const double t = sum + term;
        comp += (std::abs(sum) >= std::abs(term)) ? (sum - t) + term : (term - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

struct MeanStdErr {
    double mean{};
    double std_err{};
    int count{};
};

MeanStdErr mean_stderr(std::span<const double> values);

// Runs fn(0..count-1) on `workers` threads (0 = auto: SKLAB_WORKERS env or
// hardware concurrency). Slots are claimed by atomic counter; callers must
// write results into per-index storage so output is schedule-independent.
void parallel_for(int count, int workers, const std::function<void(int)>& fn);

int resolve_workers(int requested);

}
