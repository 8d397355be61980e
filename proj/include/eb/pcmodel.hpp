#pragma once

#include "eb/deltafn.hpp"

namespace eb {

enum class ModelSide { plus_lambda0, minus_lambda0 };

// First-moment entries of the local model at a stationary point.
struct LocalModelData {
  cplx r0{0.0, 0.0};
  double nu0 = 0.0;
  cplx M1_12{0.0, 0.0};
  cplx M1_21{0.0, 0.0};
  ModelSide side = ModelSide::plus_lambda0;
};

// r0 = r(lambda0) * delta0^{-2} * exp(16 i t lambda0^3) * exp(i nu0 ln(48 t lambda0)).
// Every factor but r(lambda0) is unimodular.
cplx r0_factor(const ScatteringData& sd, const EndpointData& ed, double lambda0, double t);

LocalModelData local_model_M1(cplx r0, double nu0, ModelSide side);

}  // namespace eb
