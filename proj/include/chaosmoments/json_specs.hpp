#pragma once

#include <json.hpp>

#include "chaosmoments/kernels.hpp"
#include "chaosmoments/noise.hpp"

namespace chaosmoments {

// JSON wire format:
//   noise  {"time":{"kind":"white"|"power","gamma":g},
//           "space":{"kind":"white"|"riesz"|"product","d":d,"lambda":l,"lambdas":[...]}}
//   kernel {"kind":"heat"|"alpha_heat"|"wave"|"frac","d":d,"alpha":a,"beta":b}

nlohmann::json to_json(const NoiseSpec& n);
NoiseSpec noise_from_json(const nlohmann::json& j);

nlohmann::json to_json(const KernelSpec& k);
KernelSpec kernel_from_json(const nlohmann::json& j);

}  // namespace chaosmoments
