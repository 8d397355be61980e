#include "eb/gammafn.hpp"

#include <cmath>

namespace eb {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr int kG = 7;
constexpr double kCoeff[kG + 2] = {0.99999999999980993,  676.5203681218851,   -1259.1392167224028,
                                   771.32342877765313,   -176.61502916214059, 12.507343278686905,
                                   -0.13857109526572012, 9.9843695780195716e-6,
                                   1.5056327351493116e-7};

}  // namespace

std::complex<double> gamma_complex(std::complex<double> z) {
  using cplx = std::complex<double>;
  if (z.real() < 0.5) {
    // reflection keeps the argument in the well-conditioned half plane
    return kPi / (std::sin(kPi * z) * gamma_complex(1.0 - z));
  }
  z -= 1.0;
  cplx x = kCoeff[0];
  for (int i = 1; i < kG + 2; ++i) x += kCoeff[i] / (z + cplx(static_cast<double>(i), 0.0));
  const cplx t = z + (kG + 0.5);
  return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

}  // namespace eb
