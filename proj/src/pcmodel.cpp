#include "eb/pcmodel.hpp"

#include <cmath>
#include <sstream>

#include "eb/gammafn.hpp"

namespace eb {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

cplx r0_factor(const ScatteringData& sd, const EndpointData& ed, double lambda0, double t) {
  if (!(t > 0.0)) throw BadParams("r0_factor: t must be positive");
  if (!(lambda0 > 0.0)) throw BadParams("r0_factor: lambda0 must be positive");
  ReflectionTable rt(sd);
  if (lambda0 < rt.s_min() || lambda0 > rt.s_max())
    throw RangeTooNarrow("r0_factor: lambda0 outside the sweep");
  const cplx r = rt.r(lambda0);
  const double nu0 = ed.nu0;
  const cplx inv_delta0_sq = 1.0 / (ed.delta0 * ed.delta0);
  const cplx osc = std::exp(cplx(0.0, 16.0 * t * lambda0 * lambda0 * lambda0));
  const cplx slow = std::exp(cplx(0.0, nu0 * std::log(48.0 * t * lambda0)));
  return r * inv_delta0_sq * osc * slow;
}

LocalModelData local_model_M1(cplx r0, double nu0, ModelSide side) {
  if (std::abs(r0) == 0.0 || nu0 >= 0.0) {
    throw DegenerateReflection(
        "local_model_M1: vanishing reflection, the local model is vacuous and the "
        "asymptotic amplitude is zero");
  }
  const cplx i1(0.0, 1.0);
  const cplx gamma_p = gamma_complex(cplx(0.0, nu0));    // Gamma(i nu)
  const cplx gamma_m = gamma_complex(cplx(0.0, -nu0));   // Gamma(-i nu)
  const double pref = std::sqrt(2.0 * kPi) * std::exp(0.5 * kPi * nu0);

  LocalModelData out;
  out.nu0 = nu0;
  out.side = side;
  out.r0 = r0;
  const cplx m12 = pref * std::exp(cplx(0.0, -3.0 * kPi / 4.0)) / (i1 * std::conj(r0) * gamma_p);
  const cplx m21 = pref * i1 * std::exp(cplx(0.0, -kPi / 4.0)) / (r0 * gamma_m);
  if (side == ModelSide::plus_lambda0) {
    out.M1_12 = m12;
    out.M1_21 = m21;
  } else {
    out.M1_12 = -std::conj(m12);
    out.M1_21 = -std::conj(m21);
  }
  return out;
}

}  // namespace eb
