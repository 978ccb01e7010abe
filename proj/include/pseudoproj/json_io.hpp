// Copyright 2026 The pseudoproj developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <json.hpp>
#include <string>

#include "pseudoproj/expand.hpp"
#include "pseudoproj/pseudo.hpp"
#include "pseudoproj/qcore.hpp"
#include "pseudoproj/scan.hpp"
#include "pseudoproj/witness.hpp"

namespace pseudoproj {

using Json = nlohmann::ordered_json;

Json direction_to_json(const DirectionSpec& d);
DirectionSpec direction_from_json(const Json& j);

Json observable_pairs_to_json(std::span<const ObservablePair> obs);
std::vector<ObservablePair> observable_pairs_from_json(const Json& j);

/// {"alpha": rad, "qubits": [{"a": [x,y,z], "a_prime": [...], "a_dprime": [...],
///  "planes": [[...], [...], [...]]}]}; planes are optional on input.
Json direction_config_to_json(const DirectionConfig& cfg);
DirectionConfig direction_config_from_json(const Json& j);

/// Dense complex matrix as rows of [re, im] pairs.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

DensityOperator density_from_json(const Json& j);

Json pps_to_json(const PseudoProbabilityScheme& pps);

Json expansion_to_json(const Expansion& e, const ComplexOperator& original);

Json scan_result_to_json(const ScanResult& r);
ScanResult scan_result_from_json(const Json& j);

}  // namespace pseudoproj
