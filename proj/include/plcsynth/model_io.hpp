// SPDX-License-Identifier: Apache-2.0
//
// plcsynth - top-down statistical modeling and synthesis of PLC channels
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
//
// Model files: a JSON envelope (grid, dimensions, sampling mode, slope
// samples, fit metadata) referencing a little-endian float64 binary
// sidecar holding the mean vector and covariance matrices.

#pragma once

#include <string>

#include "json.hpp"

#include "plcsynth/generator.hpp"

namespace plcsynth
{

enum class ModelKind
{
    siso,
    mimo
};

void save_model(const SisoChannelModel &model, const std::string &json_path,
                const nlohmann::json &provenance = nullptr);
void save_model(const MimoChannelModel &model, const std::string &json_path,
                const nlohmann::json &provenance = nullptr);

ModelKind peek_model_kind(const std::string &json_path);

SisoChannelModel load_siso_model(const std::string &json_path);
MimoChannelModel load_mimo_model(const std::string &json_path);

} // namespace plcsynth
