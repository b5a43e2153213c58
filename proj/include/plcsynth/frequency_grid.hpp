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

#include <armadillo>
#include <cstddef>

#include "plcsynth/error.hpp"

namespace plcsynth
{

/// Uniform frequency axis shared by ensembles, models and metrics.
///
/// axis_kind distinguishes a physical frequency sweep from the synthetic
/// flattened (mode, frequency) axis produced by reshape_mimo; compatibility
/// is decided by the three defining fields alone.
struct FrequencyGrid
{
    enum class AxisKind
    {
        physical_frequency,
        flattened_modes
    };

    double f_start_hz = 0.0;
    double f_end_hz = 0.0;
    std::size_t m_samples = 0;
    AxisKind axis_kind = AxisKind::physical_frequency;

    double delta_f_hz() const
    {
        return (f_end_hz - f_start_hz) / static_cast<double>(m_samples - 1);
    }

    double frequency(std::size_t k) const
    {
        return f_start_hz + static_cast<double>(k) * delta_f_hz();
    }

    arma::vec frequencies() const
    {
        arma::vec f(m_samples);
        for (std::size_t k = 0; k < m_samples; ++k)
            f(k) = frequency(k);
        return f;
    }

    double bandwidth_hz() const { return f_end_hz - f_start_hz; }

    bool compatible_with(const FrequencyGrid &other) const
    {
        return f_start_hz == other.f_start_hz && f_end_hz == other.f_end_hz &&
               m_samples == other.m_samples;
    }
};

/// Validating constructor; throws degenerate_grid on invalid fields.
inline FrequencyGrid make_grid(double f_start_hz, double f_end_hz,
                               std::size_t m_samples,
                               FrequencyGrid::AxisKind axis_kind =
                                   FrequencyGrid::AxisKind::physical_frequency)
{
    if (!(f_start_hz > 0.0) || !(f_end_hz > f_start_hz))
        raise(ErrorCode::degenerate_grid,
              "frequency grid requires 0 < f_start < f_end");
    if (m_samples < 2)
        raise(ErrorCode::degenerate_grid,
              "frequency grid requires at least 2 samples");
    return FrequencyGrid{f_start_hz, f_end_hz, m_samples, axis_kind};
}

} // namespace plcsynth
