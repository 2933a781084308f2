/* Copyright 2026 The Foothill Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// JSON views of results and configs.

#pragma once

#include <json.hpp>

#include "foothill/penalty.hpp"
#include "foothill/quantizer.hpp"
#include "foothill/regression.hpp"

namespace foothill {

nlohmann::json to_json(const SaddleInfo& info);
nlohmann::json to_json(const FitResult& result);
nlohmann::json to_json(const ConsistencyReport& report);
nlohmann::json to_json(const QuantReport& report);
nlohmann::json to_json(const TrainConfig& cfg);

// Keys mirror TrainConfig: epochs, batch_size, learning_rate, lambda_base,
// seed, penalty {kind, alpha, beta}. Missing keys keep their defaults;
// unknown keys are rejected. Throws ArgumentError.
TrainConfig train_config_from_json(const nlohmann::json& j);

}  // namespace foothill
