#pragma once

#include <complex>
#include <vector>

namespace cavgate {

// Complex 1-D transforms, FFTW-backed. Plans are cached per size; plan
// creation is serialized internally, execution is thread-safe.

/// Unnormalized forward DFT: X_k = sum_n x_n exp(-2*pi*i*k*n/N).
std::vector<std::complex<double>> fft_forward(const std::vector<std::complex<double>>& x);

/// Normalized inverse DFT: x_n = (1/N) sum_k X_k exp(+2*pi*i*k*n/N).
std::vector<std::complex<double>> fft_inverse(const std::vector<std::complex<double>>& x);

} // namespace cavgate
