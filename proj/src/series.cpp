// series.cpp: Grids and the thread-pool map

#include "spinbath/series.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace spinbath {

unsigned worker_count() {
    if (const char* env = std::getenv("SPINBATH_THREADS")) {
        try {
            const long n = std::stol(env);
            if (n >= 1) return static_cast<unsigned>(n);
        } catch (const std::exception&) {
        }
        throw std::invalid_argument(std::string("SPINBATH_THREADS must be a positive integer, got '") +
                                    env + "'");
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<double> parallel_map(std::size_t n, const std::function<double(std::size_t)>& f) {
    std::vector<double> out(n);
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                out[i] = f(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next = n;
            }
        }
    };
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    pool.clear();
    if (error) std::rethrow_exception(error);
    return out;
}

std::vector<double> linear_grid(double start, double stop, std::size_t n) {
    if (n == 0) throw std::invalid_argument("grid needs at least one point");
    std::vector<double> g(n);
    if (n == 1) {
        g[0] = start;
        return g;
    }
    const double step = (stop - start) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) g[i] = start + step * static_cast<double>(i);
    g[n - 1] = stop;
    return g;
}

} // namespace spinbath
