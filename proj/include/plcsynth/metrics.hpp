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
// Channel statistical metrics with pinned definitions:
//  * ACG: 10*log10 of the mean squared CFR magnitude (power mean over
//    frequency; for MIMO additionally over rx/tx mode pairs).
//  * RMS-DS: second central moment of the impulse-response power profile;
//    h = inverse DFT of the CFR treated as equivalent baseband, delays
//    t_n = n/(M*delta_f), rectangular window, all taps included.
//  * Coherence bandwidth: smallest lag where the magnitude of the
//    frequency autocorrelation (normalized over the overlapping window at
//    each lag) first drops below `level`, linearly interpolated between
//    the straddling lags; full band width when it never drops.
//  * MIMO capacity: delta_f * sum_k log2 det(I + (P_k/N_T) *
//    R_w(f_k)^{-1} H_k H_k^H) with equal per-port power and noise
//    covariance R_w = D^{1/2} C D^{1/2} (D = per-mode PSD, C = rx
//    correlation), evaluated through Cholesky whitening.

#pragma once

#include <armadillo>
#include <cstddef>
#include <string>

#include "plcsynth/ensemble.hpp"
#include "plcsynth/error.hpp"

namespace plcsynth
{

/// Per-receive-mode noise PSD plus the frequency-independent correlation
/// among the receiving modes.
struct NoiseModel
{
    bool white = true;          // single PSD for all modes and tones
    double white_psd_dbm_per_hz = -110.0;
    FrequencyGrid grid;         // valid when !white
    arma::mat psd_dbm_per_hz;   // n_rx x m_samples when !white
    arma::mat rx_correlation;   // n_rx x n_rx, PSD, unit diagonal

    std::size_t n_rx() const { return rx_correlation.n_rows; }
};

/// Transmit PSD mask, flat or per-frequency, split equally across ports.
struct TxSpec
{
    bool flat = true;
    double flat_psd_dbm_per_hz = -55.0;
    FrequencyGrid grid;       // valid when !flat
    arma::vec psd_dbm_per_hz; // m_samples when !flat
};

/// Per-realization metric vectors and their ensemble averages.
struct MetricsReport
{
    arma::vec acg_db;
    arma::vec rms_ds_s;
    arma::vec cb_hz;
    arma::vec capacity_bps;

    double avg_acg_db = 0.0;
    double avg_rms_ds_s = 0.0;
    double avg_cb_hz = 0.0;
    double avg_capacity_bps = 0.0;
};

NoiseModel default_noise_model(std::size_t n_rx);
TxSpec default_tx_spec();

/// Average channel gain in dB, one value per realization.
arma::vec acg(const ChannelEnsemble &ens);

/// MIMO ACG: power mean additionally over the (rx, tx) mode pairs.
arma::vec acg(const MimoChannelEnsemble &ens);

/// RMS delay spread in seconds, one value per realization.
arma::vec rms_delay_spread(const ChannelEnsemble &ens);

/// MIMO RMS-DS: per-mode values averaged per realization.
arma::vec rms_delay_spread(const MimoChannelEnsemble &ens);

/// Per-mode RMS-DS matrix (n_meas x n_rx*n_tx), columns in flat order.
arma::mat rms_delay_spread_modes(const MimoChannelEnsemble &ens);

/// Coherence bandwidth at `level` in Hz, one value per realization.
arma::vec coherence_bandwidth(const ChannelEnsemble &ens, double level = 0.9);

/// MIMO CB: per-mode values averaged per realization.
arma::vec coherence_bandwidth(const MimoChannelEnsemble &ens,
                              double level = 0.9);

/// Shannon capacity in bits/s per realization (equal per-port power, noise
/// whitening, no waterfilling). Throws singular_noise / grid_mismatch.
arma::vec mimo_capacity(const MimoChannelEnsemble &ens, const TxSpec &tx,
                        const NoiseModel &noise);

/// SISO ensembles are 1x1 MIMO for capacity purposes.
arma::vec mimo_capacity(const ChannelEnsemble &ens, const TxSpec &tx,
                        const NoiseModel &noise);

/// Single-tone log-det capacity density (bits/s/Hz): log2 det(I +
/// (tx_psd_w/n_tx) * noise_cov^{-1} h h^H). Exposed for direct testing.
double capacity_logdet_tone(const arma::cx_mat &h, const arma::mat &noise_cov_w,
                            double tx_psd_w, std::size_t n_tx);

/// Complementary CDF: for each grid point, the fraction of values strictly
/// greater. Throws empty_input.
arma::vec ccdf(const arma::vec &values, const arma::vec &grid);

MetricsReport compute_metrics(const ChannelEnsemble &ens, const TxSpec &tx,
                              const NoiseModel &noise, double cb_level = 0.9);
MetricsReport compute_metrics(const MimoChannelEnsemble &ens, const TxSpec &tx,
                              const NoiseModel &noise, double cb_level = 0.9);

} // namespace plcsynth
