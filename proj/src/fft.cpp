// fft.cpp: FFTW-backed real convolution with a per-size plan cache

#include "spinbath/fft.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <new>

#include <fftw3.h>

namespace spinbath::fft {

namespace {

template <typename T>
struct FftwFree {
    void operator()(T* p) const { fftw_free(p); }
};
template <typename T>
using FftwBuffer = std::unique_ptr<T, FftwFree<T>>;

template <typename T>
FftwBuffer<T> allocate(std::size_t n) {
    auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * n));
    if (!p) throw std::bad_alloc();
    return FftwBuffer<T>(p);
}

struct Plans {
    fftw_plan forward{};
    fftw_plan backward{};
};

// The FFTW planner is not thread-safe; plan execution on fresh arrays is.
std::mutex planner_mutex;

const Plans& plans_for(std::size_t n) {
    static std::map<std::size_t, Plans> cache;
    std::lock_guard lock(planner_mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    auto real = allocate<double>(n);
    auto spec = allocate<fftw_complex>(n / 2 + 1);
    const int len = static_cast<int>(n);
    Plans p;
    p.forward = fftw_plan_dft_r2c_1d(len, real.get(), spec.get(), FFTW_ESTIMATE);
    p.backward = fftw_plan_dft_c2r_1d(len, spec.get(), real.get(), FFTW_ESTIMATE);
    if (!p.forward || !p.backward) throw std::bad_alloc();
    return cache.emplace(n, p).first->second;
}

std::vector<double> direct(std::span<const double> a, std::span<const double> b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

} // namespace

std::vector<double> convolve(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) return {};
    if (a.size() * b.size() <= 4096) return direct(a, b);

    const std::size_t len = a.size() + b.size() - 1;
    std::size_t n = 1;
    while (n < len) n <<= 1;
    const Plans& plans = plans_for(n);
    const std::size_t half = n / 2 + 1;

    auto xa = allocate<double>(n);
    auto xb = allocate<double>(n);
    auto fa = allocate<fftw_complex>(half);
    auto fb = allocate<fftw_complex>(half);
    std::fill_n(xa.get(), n, 0.0);
    std::fill_n(xb.get(), n, 0.0);
    std::copy(a.begin(), a.end(), xa.get());
    std::copy(b.begin(), b.end(), xb.get());
    fftw_execute_dft_r2c(plans.forward, xa.get(), fa.get());
    fftw_execute_dft_r2c(plans.forward, xb.get(), fb.get());
    for (std::size_t k = 0; k < half; ++k) {
        const double re = fa.get()[k][0] * fb.get()[k][0] - fa.get()[k][1] * fb.get()[k][1];
        const double im = fa.get()[k][0] * fb.get()[k][1] + fa.get()[k][1] * fb.get()[k][0];
        fa.get()[k][0] = re;
        fa.get()[k][1] = im;
    }
    fftw_execute_dft_c2r(plans.backward, fa.get(), xa.get());
    std::vector<double> out(len);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < len; ++i) out[i] = xa.get()[i] * scale;
    return out;
}

} // namespace spinbath::fft
