#include "eb/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace eb::fft {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Iterative radix-2 Cooley-Tukey, n a power of two.
void fft_pow2(std::vector<cplx>& a, bool inverse) {
  const std::size_t n = a.size();
  // bit reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = 2.0 * kPi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
    const cplx wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cplx u = a[i + k];
        const cplx v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

// Bluestein's algorithm for arbitrary n, built on the radix-2 kernel.
void fft_bluestein(std::vector<cplx>& a, bool inverse) {
  const std::size_t n = a.size();
  const std::size_t m = next_pow2(2 * n - 1);
  const double sign = inverse ? 1.0 : -1.0;

  std::vector<cplx> w(n);
  for (std::size_t k = 0; k < n; ++k) {
    // angle = pi * k^2 / n, k^2 reduced mod 2n to keep the argument small
    const std::size_t k2 = (k * k) % (2 * n);
    const double ang = kPi * static_cast<double>(k2) / static_cast<double>(n);
    w[k] = cplx(std::cos(ang), sign * std::sin(ang));
  }

  std::vector<cplx> x(m, cplx(0.0, 0.0)), y(m, cplx(0.0, 0.0));
  for (std::size_t k = 0; k < n; ++k) x[k] = a[k] * w[k];
  y[0] = std::conj(w[0]);
  for (std::size_t k = 1; k < n; ++k) y[k] = y[m - k] = std::conj(w[k]);

  fft_pow2(x, false);
  fft_pow2(y, false);
  for (std::size_t k = 0; k < m; ++k) x[k] *= y[k];
  fft_pow2(x, true);
  const double minv = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * minv * w[k];
}

}  // namespace

void transform(std::vector<cplx>& data, bool inverse) {
  const std::size_t n = data.size();
  if (n <= 1) return;
  if (is_pow2(n)) {
    fft_pow2(data, inverse);
  } else {
    fft_bluestein(data, inverse);
  }
  if (inverse) {
    const double ninv = 1.0 / static_cast<double>(n);
    for (auto& v : data) v *= ninv;
  }
}

std::vector<cplx> forward_real(const std::vector<double>& x) {
  const std::size_t n = x.size();
  if (n % 2 != 0) throw std::invalid_argument("forward_real: n must be even");
  const std::size_t h = n / 2;

  // pack pairs into a half-size complex transform
  std::vector<cplx> z(h);
  for (std::size_t j = 0; j < h; ++j) z[j] = cplx(x[2 * j], x[2 * j + 1]);
  transform(z, false);

  std::vector<cplx> out(h + 1);
  const cplx i1(0.0, 1.0);
  for (std::size_t k = 0; k <= h; ++k) {
    const cplx zk = (k == h) ? z[0] : z[k];
    const cplx zc = std::conj((k == 0) ? z[0] : z[h - k]);
    const double ang = -kPi * static_cast<double>(k) / static_cast<double>(h);
    const cplx tw(std::cos(ang), std::sin(ang));
    out[k] = 0.5 * (zk + zc) - 0.5 * i1 * tw * (zk - zc);
  }
  return out;
}

std::vector<double> inverse_real(const std::vector<cplx>& spectrum, std::size_t n) {
  if (n % 2 != 0) throw std::invalid_argument("inverse_real: n must be even");
  const std::size_t h = n / 2;
  if (spectrum.size() != h + 1) throw std::invalid_argument("inverse_real: bad spectrum size");

  std::vector<cplx> z(h);
  const cplx i1(0.0, 1.0);
  for (std::size_t k = 0; k < h; ++k) {
    const cplx xk = spectrum[k];
    const cplx xc = std::conj(spectrum[h - k]);
    const double ang = kPi * static_cast<double>(k) / static_cast<double>(h);
    const cplx tw(std::cos(ang), std::sin(ang));
    z[k] = 0.5 * (xk + xc) + 0.5 * i1 * tw * (xk - xc);
  }
  transform(z, true);

  std::vector<double> out(n);
  for (std::size_t j = 0; j < h; ++j) {
    out[2 * j] = z[j].real();
    out[2 * j + 1] = z[j].imag();
  }
  return out;
}

std::vector<double> derivative(const std::vector<double>& x, double period, int order) {
  if (order != 1 && order != 2) throw std::invalid_argument("derivative: order must be 1 or 2");
  const std::size_t n = x.size();
  std::vector<cplx> spec(n);
  for (std::size_t j = 0; j < n; ++j) spec[j] = cplx(x[j], 0.0);
  transform(spec, false);

  const double base = 2.0 * kPi / period;
  for (std::size_t k = 0; k < n; ++k) {
    // signed wavenumber index
    double kk = (k <= n / 2) ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n);
    if (order == 1 && 2 * k == n) kk = 0.0;  // Nyquist mode has no odd derivative
    const cplx ik(0.0, base * kk);
    spec[k] *= (order == 1) ? ik : ik * ik;
  }
  transform(spec, true);

  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = spec[j].real();
  return out;
}

}  // namespace eb::fft
