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
// Deterministic synthetic demo ensembles so the full pipeline can be
// exercised without external measurement data. Each realization is a
// closed-form multipath response
//
//   H(f) = sum_p g_p * exp(-a_p * f) * exp(-j * 2*pi * f * tau_p)
//
// with per-realization path gains g_p, attenuations a_p and delays tau_p
// drawn from fixed seeded streams. MIMO realizations share path delays
// across mode pairs and mix mode gains through a fixed matrix, giving the
// spatial correlation the joint fit is supposed to capture.

#pragma once

#include <cstdint>

#include "plcsynth/ensemble.hpp"

namespace plcsynth
{

/// 16 x 64 SISO demo ensemble on the 1.8-100 MHz band.
ChannelEnsemble demo_siso_ensemble(std::uint64_t seed = 0xD5310,
                                   std::size_t n_meas = 16,
                                   std::size_t m_samples = 64);

/// 32 x 3 x 2 x 128 MIMO demo ensemble on the 1.8-100 MHz band.
MimoChannelEnsemble demo_mimo_ensemble(std::uint64_t seed = 0xD5311,
                                       std::size_t n_meas = 32,
                                       std::size_t n_rx = 3,
                                       std::size_t n_tx = 2,
                                       std::size_t m_samples = 128);

} // namespace plcsynth
