#pragma once

#include <complex>
#include <vector>

namespace eb::fft {

using cplx = std::complex<double>;

// In-place complex FFT, any length (radix-2 for powers of two, Bluestein
// otherwise). inverse=true applies the conjugate transform including the
// 1/n factor, so inverse(forward(x)) == x.
void transform(std::vector<cplx>& data, bool inverse);

// Real-input transform for even n: returns the n/2+1 non-redundant
// spectral coefficients X_k = sum_j x_j exp(-2*pi*i*j*k/n), k = 0..n/2.
std::vector<cplx> forward_real(const std::vector<double>& x);

// Inverse of forward_real; spectrum.size() must be n/2+1.
std::vector<double> inverse_real(const std::vector<cplx>& spectrum, std::size_t n);

// Spectral derivative of a sample vector interpreted as one period of a
// smooth function with period `period`. order 1 or 2; the Nyquist mode is
// zeroed for odd orders.
std::vector<double> derivative(const std::vector<double>& x, double period, int order);

}  // namespace eb::fft
