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
// On-disk ensemble container: a JSON manifest next to a raw binary payload
// of little-endian float64 interleaved (re, im) pairs in row-major
// (meas, rx, tx, freq) order. The pair of files is the bit-exact exchange
// contract between tools and language bindings.

#pragma once

#include <string>

#include "json.hpp"

#include "plcsynth/ensemble.hpp"

namespace plcsynth
{

enum class EnsembleKind
{
    siso,
    mimo
};

/// Writes manifest (json_path) plus payload (same stem, .bin). Optional
/// provenance object is embedded verbatim in the manifest.
void save_ensemble(const ChannelEnsemble &ens, const std::string &json_path,
                   const nlohmann::json &provenance = nullptr);
void save_ensemble(const MimoChannelEnsemble &ens,
                   const std::string &json_path,
                   const nlohmann::json &provenance = nullptr);

/// Reads just the manifest "kind" field.
EnsembleKind peek_ensemble_kind(const std::string &json_path);

ChannelEnsemble load_siso_ensemble(const std::string &json_path);
MimoChannelEnsemble load_mimo_ensemble(const std::string &json_path);

/// CSV import for small hand-made fixtures: one row per realization,
/// alternating re/im columns. The sample count comes from the CSV width;
/// the band edges are supplied by the caller.
ChannelEnsemble import_csv(const std::string &csv_path, double f_start_hz,
                           double f_end_hz);

} // namespace plcsynth
