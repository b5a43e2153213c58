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
// Core tensor types for channel frequency response (CFR) ensembles, the
// log-domain view used by the statistical model, and the MIMO flattening
// that exposes joint (space, frequency) correlation as a plain matrix.

#pragma once

#include <armadillo>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "plcsynth/error.hpp"
#include "plcsynth/frequency_grid.hpp"

namespace plcsynth
{

/// Ensemble of SISO channel frequency responses; one row per realization.
struct ChannelEnsemble
{
    FrequencyGrid grid;
    arma::cx_mat data; // n_meas x m_samples
    std::vector<std::string> labels; // optional, empty or one per row

    std::size_t n_meas() const { return data.n_rows; }
    std::size_t m_samples() const { return data.n_cols; }
};

/// Ensemble of MIMO CFRs over n_meas x n_rx x n_tx x m_samples.
///
/// Stored flattened as n_meas x (n_rx*n_tx*m_samples) with the pinned
/// column order ((rx*n_tx) + tx)*m_samples + k, i.e. rx-major, then tx,
/// then frequency. This is the same order the on-disk payload and the
/// reshaped matrix use.
struct MimoChannelEnsemble
{
    FrequencyGrid grid;
    std::size_t n_rx = 0;
    std::size_t n_tx = 0;
    arma::cx_mat data; // n_meas x (n_rx*n_tx*m_samples)
    std::vector<std::string> rx_mode_names;
    std::vector<std::string> tx_mode_names;

    std::size_t n_meas() const { return data.n_rows; }
    std::size_t m_samples() const { return grid.m_samples; }
    std::size_t n_modes() const { return n_rx * n_tx; }
    std::size_t flat_dim() const { return n_rx * n_tx * grid.m_samples; }

    std::size_t flat_index(std::size_t rx, std::size_t tx, std::size_t k) const
    {
        return ((rx * n_tx) + tx) * grid.m_samples + k;
    }

    std::complex<double> at(std::size_t meas, std::size_t rx, std::size_t tx,
                            std::size_t k) const
    {
        return data(meas, flat_index(rx, tx, k));
    }

    /// CFR of one (realization, rx, tx) mode pair over frequency.
    arma::cx_vec cfr(std::size_t meas, std::size_t rx, std::size_t tx) const
    {
        const std::size_t base = flat_index(rx, tx, 0);
        arma::cx_vec out(grid.m_samples);
        for (std::size_t k = 0; k < grid.m_samples; ++k)
            out(k) = data(meas, base + k);
        return out;
    }
};

/// Log-domain view of an ensemble: H = exp(amp) * exp(j*phase).
struct LogCfr
{
    enum class AmplitudeScale
    {
        natural_log, // amp = ln|H|  (model-internal convention)
        db20         // amp = 20*log10|H| (reporting convention)
    };

    FrequencyGrid grid;
    arma::mat amp_db; // n_meas x m_samples, scale per `scale`
    arma::mat phase;  // n_meas x m_samples, wrapped to (-pi, pi]
    AmplitudeScale scale = AmplitudeScale::natural_log;

    std::size_t n_meas() const { return amp_db.n_rows; }
};

/// Validates and constructs a SISO ensemble (finite entries, no
/// identically-zero row, consistent dimensions).
ChannelEnsemble make_ensemble(const FrequencyGrid &grid, arma::cx_mat data,
                              std::vector<std::string> labels = {});

/// Validates and constructs a MIMO ensemble from the flattened matrix.
MimoChannelEnsemble make_mimo_ensemble(const FrequencyGrid &grid,
                                       std::size_t n_rx, std::size_t n_tx,
                                       arma::cx_mat data_flat,
                                       std::vector<std::string> rx_modes = {},
                                       std::vector<std::string> tx_modes = {});

/// amp = ln|H|, phase = arg(H) in (-pi, pi]. Throws zero_entry (reporting
/// row and column) on any exact-zero measurement.
LogCfr log_transform(const ChannelEnsemble &ens);

/// Inverse of log_transform (also accepts db20-scaled amplitudes).
/// Throws non_finite_input on any non-finite entry.
ChannelEnsemble exp_transform(const LogCfr &log_cfr);

/// Flattens a MIMO ensemble to n_meas x (n_rx*n_tx*m_samples) with the
/// pinned rx-major/tx/frequency column order. The output grid is a
/// synthetic flattened axis (same f_start and spacing, n_rx*n_tx*m
/// samples).
ChannelEnsemble reshape_mimo(const MimoChannelEnsemble &mimo);

/// Exact inverse of reshape_mimo. Throws dimension_mismatch when the
/// column count is not n_rx*n_tx*m_samples.
MimoChannelEnsemble unreshape_mimo(const ChannelEnsemble &flat,
                                   std::size_t n_rx, std::size_t n_tx,
                                   std::size_t m_samples,
                                   const FrequencyGrid &physical_grid);

/// Keeps every factor-th frequency sample (indices 0, factor, 2*factor,
/// ...), yielding ceil(m/factor) samples on a coarser grid.
ChannelEnsemble decimate(const ChannelEnsemble &ens, std::size_t factor);
MimoChannelEnsemble decimate(const MimoChannelEnsemble &ens,
                             std::size_t factor);

} // namespace plcsynth
