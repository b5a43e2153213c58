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

#pragma once

#include <string>

#include "json.hpp"

#include "plcsynth/metrics.hpp"

namespace plcsynth
{

/// Noise file: {"kind":"white","psd_dbm_per_hz":-110,"rx_correlation":[[..]]}
/// or {"kind":"per_frequency","f_start_hz":..,"f_end_hz":..,"m_samples":..,
/// "psd_dbm_per_hz":[[per-mode rows over frequency]],"rx_correlation":[[..]]}.
NoiseModel load_noise_model(const std::string &json_path);

/// Tx file: {"psd_dbm_per_hz": -55} or {"psd_dbm_per_hz":[..],
/// "f_start_hz":.., "f_end_hz":.., "m_samples":..}.
TxSpec load_tx_spec(const std::string &json_path);

/// JSON report plus a CSV with one row per realization.
void write_metrics_report(const MetricsReport &report,
                          const std::string &json_path,
                          const std::string &csv_path,
                          const nlohmann::json &provenance = nullptr);

} // namespace plcsynth
