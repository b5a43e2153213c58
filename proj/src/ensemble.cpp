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

#include "plcsynth/ensemble.hpp"

#include <cmath>

#include "plcsynth/mathutil.hpp"

namespace plcsynth
{

namespace
{

void check_finite(const arma::cx_mat &data, const char *what)
{
    if (!data.is_finite())
        raise(ErrorCode::non_finite_input,
              std::string(what) + ": non-finite entry");
}

} // namespace

ChannelEnsemble make_ensemble(const FrequencyGrid &grid, arma::cx_mat data,
                              std::vector<std::string> labels)
{
    if (data.n_rows < 1)
        raise(ErrorCode::too_few_realizations,
              "ensemble requires at least one realization");
    if (data.n_cols != grid.m_samples)
        raise(ErrorCode::dimension_mismatch,
              "ensemble has " + std::to_string(data.n_cols) +
                  " columns, grid has " + std::to_string(grid.m_samples) +
                  " samples");
    check_finite(data, "ensemble");
    for (arma::uword r = 0; r < data.n_rows; ++r)
    {
        bool all_zero = true;
        for (arma::uword c = 0; c < data.n_cols && all_zero; ++c)
            all_zero = data(r, c) == std::complex<double>(0.0, 0.0);
        if (all_zero)
            raise(ErrorCode::zero_entry,
                  "realization " + std::to_string(r) + " is identically zero");
    }
    if (!labels.empty() && labels.size() != data.n_rows)
        raise(ErrorCode::dimension_mismatch,
              "label count does not match realization count");
    return ChannelEnsemble{grid, std::move(data), std::move(labels)};
}

MimoChannelEnsemble make_mimo_ensemble(const FrequencyGrid &grid,
                                       std::size_t n_rx, std::size_t n_tx,
                                       arma::cx_mat data_flat,
                                       std::vector<std::string> rx_modes,
                                       std::vector<std::string> tx_modes)
{
    if (n_rx < 1 || n_tx < 1)
        raise(ErrorCode::dimension_mismatch, "mode counts must be positive");
    if (data_flat.n_rows < 1)
        raise(ErrorCode::too_few_realizations,
              "ensemble requires at least one realization");
    if (data_flat.n_cols != n_rx * n_tx * grid.m_samples)
        raise(ErrorCode::dimension_mismatch,
              "flattened column count " + std::to_string(data_flat.n_cols) +
                  " != n_rx*n_tx*m = " +
                  std::to_string(n_rx * n_tx * grid.m_samples));
    if (!rx_modes.empty() && rx_modes.size() != n_rx)
        raise(ErrorCode::dimension_mismatch, "rx mode label count mismatch");
    if (!tx_modes.empty() && tx_modes.size() != n_tx)
        raise(ErrorCode::dimension_mismatch, "tx mode label count mismatch");
    check_finite(data_flat, "mimo ensemble");
    return MimoChannelEnsemble{grid,     n_rx,
                               n_tx,     std::move(data_flat),
                               std::move(rx_modes), std::move(tx_modes)};
}

LogCfr log_transform(const ChannelEnsemble &ens)
{
    const arma::cx_mat &h = ens.data;
    arma::mat amp(h.n_rows, h.n_cols);
    arma::mat phase(h.n_rows, h.n_cols);
    for (arma::uword r = 0; r < h.n_rows; ++r)
        for (arma::uword c = 0; c < h.n_cols; ++c)
        {
            const std::complex<double> v = h(r, c);
            if (v == std::complex<double>(0.0, 0.0))
                raise(ErrorCode::zero_entry,
                      "zero CFR entry at realization " + std::to_string(r) +
                          ", frequency index " + std::to_string(c));
            amp(r, c) = std::log(std::abs(v));
            phase(r, c) = std::arg(v); // (-pi, pi]
        }
    return LogCfr{ens.grid, std::move(amp), std::move(phase),
                  LogCfr::AmplitudeScale::natural_log};
}

ChannelEnsemble exp_transform(const LogCfr &log_cfr)
{
    if (!log_cfr.amp_db.is_finite() || !log_cfr.phase.is_finite())
        raise(ErrorCode::non_finite_input, "log CFR has non-finite entries");
    if (log_cfr.amp_db.n_rows != log_cfr.phase.n_rows ||
        log_cfr.amp_db.n_cols != log_cfr.phase.n_cols)
        raise(ErrorCode::shape_mismatch,
              "amplitude and phase shapes do not match");
    const bool natural =
        log_cfr.scale == LogCfr::AmplitudeScale::natural_log;
    arma::cx_mat h(log_cfr.amp_db.n_rows, log_cfr.amp_db.n_cols);
    for (arma::uword r = 0; r < h.n_rows; ++r)
        for (arma::uword c = 0; c < h.n_cols; ++c)
        {
            const double mag = natural
                                   ? std::exp(log_cfr.amp_db(r, c))
                                   : std::pow(10.0, log_cfr.amp_db(r, c) / 20.0);
            h(r, c) = std::polar(mag, log_cfr.phase(r, c));
        }
    return make_ensemble(log_cfr.grid, std::move(h));
}

ChannelEnsemble reshape_mimo(const MimoChannelEnsemble &mimo)
{
    // The in-memory layout already is the reshaped matrix; only the grid
    // metadata changes.
    FrequencyGrid flat_grid = mimo.grid;
    flat_grid.m_samples = mimo.flat_dim();
    flat_grid.f_end_hz = flat_grid.f_start_hz +
                         static_cast<double>(flat_grid.m_samples - 1) *
                             mimo.grid.delta_f_hz();
    flat_grid.axis_kind = FrequencyGrid::AxisKind::flattened_modes;
    return ChannelEnsemble{flat_grid, mimo.data, {}};
}

MimoChannelEnsemble unreshape_mimo(const ChannelEnsemble &flat,
                                   std::size_t n_rx, std::size_t n_tx,
                                   std::size_t m_samples,
                                   const FrequencyGrid &physical_grid)
{
    if (flat.data.n_cols != n_rx * n_tx * m_samples)
        raise(ErrorCode::dimension_mismatch,
              "flat column count " + std::to_string(flat.data.n_cols) +
                  " != n_rx*n_tx*m = " +
                  std::to_string(n_rx * n_tx * m_samples));
    if (physical_grid.m_samples != m_samples)
        raise(ErrorCode::dimension_mismatch,
              "physical grid sample count does not match m");
    return make_mimo_ensemble(physical_grid, n_rx, n_tx, flat.data);
}

ChannelEnsemble decimate(const ChannelEnsemble &ens, std::size_t factor)
{
    if (factor < 1)
        raise(ErrorCode::usage_error, "decimation factor must be >= 1");
    if (factor == 1)
        return ens;
    const std::size_t m = ens.grid.m_samples;
    const std::size_t m_out = (m + factor - 1) / factor;
    if (m_out < 2)
        raise(ErrorCode::degenerate_grid,
              "decimation leaves fewer than 2 samples");
    arma::cx_mat out(ens.data.n_rows, m_out);
    for (std::size_t k = 0; k < m_out; ++k)
        out.col(k) = ens.data.col(k * factor);
    const double delta = ens.grid.delta_f_hz() * static_cast<double>(factor);
    FrequencyGrid grid = make_grid(
        ens.grid.f_start_hz,
        ens.grid.f_start_hz + delta * static_cast<double>(m_out - 1), m_out,
        ens.grid.axis_kind);
    return ChannelEnsemble{grid, std::move(out), ens.labels};
}

MimoChannelEnsemble decimate(const MimoChannelEnsemble &ens,
                             std::size_t factor)
{
    if (factor < 1)
        raise(ErrorCode::usage_error, "decimation factor must be >= 1");
    if (factor == 1)
        return ens;
    const std::size_t m = ens.grid.m_samples;
    const std::size_t m_out = (m + factor - 1) / factor;
    if (m_out < 2)
        raise(ErrorCode::degenerate_grid,
              "decimation leaves fewer than 2 samples");
    arma::cx_mat out(ens.data.n_rows, ens.n_rx * ens.n_tx * m_out);
    for (std::size_t rx = 0; rx < ens.n_rx; ++rx)
        for (std::size_t tx = 0; tx < ens.n_tx; ++tx)
            for (std::size_t k = 0; k < m_out; ++k)
            {
                const std::size_t src = ens.flat_index(rx, tx, k * factor);
                const std::size_t dst =
                    ((rx * ens.n_tx) + tx) * m_out + k;
                out.col(dst) = ens.data.col(src);
            }
    const double delta = ens.grid.delta_f_hz() * static_cast<double>(factor);
    FrequencyGrid grid = make_grid(
        ens.grid.f_start_hz,
        ens.grid.f_start_hz + delta * static_cast<double>(m_out - 1), m_out);
    return make_mimo_ensemble(grid, ens.n_rx, ens.n_tx, std::move(out),
                              ens.rx_mode_names, ens.tx_mode_names);
}

} // namespace plcsynth
