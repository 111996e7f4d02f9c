#pragma once

// Minimal complex DFT machinery: iterative radix-2 FFT for power-of-two
// lengths, direct O(n^2) evaluation otherwise. Sizes at desk scale are tiny
// (torus grids <= 256, convolution pads <= 1024), so no external FFT library
// is pulled in.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace fflab {

bool is_pow2(std::size_t n);

// In-place forward (e^{-i...}) or inverse transform; the inverse includes
// the 1/n factor. Length must be a power of two.
void fft_pow2(std::vector<std::complex<double>>& a, bool inverse);

// Any length; forward sums a_j e^{-2pi i jk/n}, inverse includes 1/n.
std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& a, bool inverse);

// Transform of one sequence of arbitrary length (FFT when possible).
std::vector<std::complex<double>> dft_any(std::vector<std::complex<double>> a, bool inverse);

// Row-column 2-D transform.
Eigen::MatrixXcd dft2(const Eigen::MatrixXcd& in, bool inverse);

} // namespace fflab
