// fft.hpp: Linear convolution of real sequences through FFTW

#pragma once

#include <span>
#include <vector>

namespace spinbath::fft {

// Full linear convolution, length a.size() + b.size() - 1.
// Short inputs are convolved directly.
std::vector<double> convolve(std::span<const double> a, std::span<const double> b);

} // namespace spinbath::fft
