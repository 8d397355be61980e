#pragma once

#include <complex>

namespace eb {

// Complex gamma function (Lanczos approximation, reflection formula for
// Re z < 0.5). Accurate to ~1e-13 relative on the strip needed here.
std::complex<double> gamma_complex(std::complex<double> z);

}  // namespace eb
