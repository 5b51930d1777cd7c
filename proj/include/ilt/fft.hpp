#pragma once

#include <complex>
#include <vector>

namespace ilt::fft {

/// In-place radix-2 decimation-in-time FFT; size must be a power of two.
/// Unnormalized forward transform X_k = sum_j x_j exp(-2 pi i j k / n).
void forward(std::vector<std::complex<double>>& data);

/// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

}  // namespace ilt::fft
