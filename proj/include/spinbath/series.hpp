// series.hpp: Time series container and a small parallel map

#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "spinbath/model.hpp"

namespace spinbath {

struct TimeSeries {
    std::string method;  // "full", "wwa", "niba", ...
    ModelParams params;
    double abs_tol{0.0};
    double rel_tol{0.0};
    std::vector<double> t;
    std::vector<double> value;
};

// Worker count from SPINBATH_THREADS, else the hardware concurrency.
unsigned worker_count();

// out[i] = f(i) for i < n, spread over worker_count() threads. The first
// exception thrown by any f is rethrown after all workers finish.
std::vector<double> parallel_map(std::size_t n, const std::function<double(std::size_t)>& f);

// n points uniform on [start, stop], both ends included (n = 1 gives start).
std::vector<double> linear_grid(double start, double stop, std::size_t n);

} // namespace spinbath
