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

#include "plcsynth/metrics.hpp"

#include <cmath>

#include "plcsynth/mathutil.hpp"
#include "parallel.hpp"

namespace plcsynth
{

namespace
{

double mean_power(const arma::cx_vec &h)
{
    double acc = 0.0;
    for (arma::uword k = 0; k < h.n_elem; ++k)
        acc += std::norm(h(k));
    return acc / static_cast<double>(h.n_elem);
}

// RMS width of the impulse-response power profile; h_time = IDFT of the
// CFR samples, delays t_n = n/(M*delta_f), rectangular window, all taps.
double rms_ds_single(const arma::cx_vec &h_freq, double delta_f)
{
    const std::size_t m = h_freq.n_elem;
    const arma::cx_vec h_time = arma::ifft(h_freq);
    const double delta_t = 1.0 / (static_cast<double>(m) * delta_f);

    double power_sum = 0.0;
    double first_moment = 0.0;
    for (std::size_t n = 0; n < m; ++n)
    {
        const double p = std::norm(h_time(n));
        power_sum += p;
        first_moment += static_cast<double>(n) * delta_t * p;
    }
    if (power_sum == 0.0)
        return 0.0;
    const double mean_delay = first_moment / power_sum;
    double second_moment = 0.0;
    for (std::size_t n = 0; n < m; ++n)
    {
        const double t = static_cast<double>(n) * delta_t - mean_delay;
        second_moment += t * t * std::norm(h_time(n));
    }
    return std::sqrt(second_moment / power_sum);
}

// Frequency autocorrelation magnitude, normalized over the overlapping
// window at each lag so flat and pure-delay channels give rho == 1.
double cb_single(const arma::cx_vec &h, double delta_f, double level,
                 double band_width)
{
    const std::size_t m = h.n_elem;
    double rho_prev = 1.0;
    for (std::size_t lag = 1; lag < m; ++lag)
    {
        std::complex<double> num(0.0, 0.0);
        double den = 0.0;
        for (std::size_t k = 0; k + lag < m; ++k)
        {
            num += h(k) * std::conj(h(k + lag));
            den += std::norm(h(k));
        }
        const double rho = den > 0.0 ? std::abs(num) / den : 0.0;
        if (rho < level)
        {
            const double frac = (rho_prev - level) / (rho_prev - rho);
            return delta_f * (static_cast<double>(lag - 1) + frac);
        }
        rho_prev = rho;
    }
    return band_width;
}

arma::mat noise_covariance_w(const NoiseModel &noise, std::size_t tone)
{
    const std::size_t n_rx = noise.n_rx();
    arma::vec psd_w(n_rx);
    if (noise.white)
        psd_w.fill(dbm_per_hz_to_w_per_hz(noise.white_psd_dbm_per_hz));
    else
        for (std::size_t i = 0; i < n_rx; ++i)
            psd_w(i) = dbm_per_hz_to_w_per_hz(noise.psd_dbm_per_hz(i, tone));
    arma::mat cov(n_rx, n_rx);
    for (std::size_t i = 0; i < n_rx; ++i)
        for (std::size_t j = 0; j < n_rx; ++j)
            cov(i, j) =
                std::sqrt(psd_w(i) * psd_w(j)) * noise.rx_correlation(i, j);
    return cov;
}

double tx_psd_w(const TxSpec &tx, std::size_t tone)
{
    return dbm_per_hz_to_w_per_hz(tx.flat ? tx.flat_psd_dbm_per_hz
                                          : tx.psd_dbm_per_hz(tone));
}

void check_tx_noise_grids(const FrequencyGrid &grid, const TxSpec &tx,
                          const NoiseModel &noise)
{
    if (!tx.flat && !tx.grid.compatible_with(grid))
        raise(ErrorCode::grid_mismatch,
              "tx PSD grid does not match the ensemble grid");
    if (!noise.white && !noise.grid.compatible_with(grid))
        raise(ErrorCode::grid_mismatch,
              "noise PSD grid does not match the ensemble grid");
}

} // namespace

NoiseModel default_noise_model(std::size_t n_rx)
{
    NoiseModel noise;
    noise.white = true;
    noise.white_psd_dbm_per_hz = -110.0;
    noise.rx_correlation = arma::eye(n_rx, n_rx);
    return noise;
}

TxSpec default_tx_spec()
{
    return TxSpec{};
}

arma::vec acg(const ChannelEnsemble &ens)
{
    arma::vec out(ens.n_meas());
    for (std::size_t r = 0; r < ens.n_meas(); ++r)
        out(r) = power_db(mean_power(ens.data.row(r).st()));
    return out;
}

arma::vec acg(const MimoChannelEnsemble &ens)
{
    arma::vec out(ens.n_meas());
    for (std::size_t r = 0; r < ens.n_meas(); ++r)
        out(r) = power_db(mean_power(ens.data.row(r).st()));
    return out;
}

arma::vec rms_delay_spread(const ChannelEnsemble &ens)
{
    if (ens.grid.m_samples < 2)
        raise(ErrorCode::degenerate_grid,
              "RMS-DS needs at least 2 frequency samples");
    arma::vec out(ens.n_meas());
    for (std::size_t r = 0; r < ens.n_meas(); ++r)
        out(r) = rms_ds_single(ens.data.row(r).st(), ens.grid.delta_f_hz());
    return out;
}

arma::mat rms_delay_spread_modes(const MimoChannelEnsemble &ens)
{
    if (ens.grid.m_samples < 2)
        raise(ErrorCode::degenerate_grid,
              "RMS-DS needs at least 2 frequency samples");
    arma::mat out(ens.n_meas(), ens.n_modes());
    for (std::size_t r = 0; r < ens.n_meas(); ++r)
        for (std::size_t rx = 0; rx < ens.n_rx; ++rx)
            for (std::size_t tx = 0; tx < ens.n_tx; ++tx)
                out(r, rx * ens.n_tx + tx) =
                    rms_ds_single(ens.cfr(r, rx, tx), ens.grid.delta_f_hz());
    return out;
}

arma::vec rms_delay_spread(const MimoChannelEnsemble &ens)
{
    return arma::mean(rms_delay_spread_modes(ens), 1);
}

arma::vec coherence_bandwidth(const ChannelEnsemble &ens, double level)
{
    if (!(level > 0.0 && level < 1.0))
        raise(ErrorCode::usage_error, "CB level must lie in (0, 1)");
    arma::vec out(ens.n_meas());
    for (std::size_t r = 0; r < ens.n_meas(); ++r)
        out(r) = cb_single(ens.data.row(r).st(), ens.grid.delta_f_hz(),
                           level, ens.grid.bandwidth_hz());
    return out;
}

arma::vec coherence_bandwidth(const MimoChannelEnsemble &ens, double level)
{
    if (!(level > 0.0 && level < 1.0))
        raise(ErrorCode::usage_error, "CB level must lie in (0, 1)");
    arma::vec out(ens.n_meas(), arma::fill::zeros);
    for (std::size_t r = 0; r < ens.n_meas(); ++r)
    {
        double acc = 0.0;
        for (std::size_t rx = 0; rx < ens.n_rx; ++rx)
            for (std::size_t tx = 0; tx < ens.n_tx; ++tx)
                acc += cb_single(ens.cfr(r, rx, tx), ens.grid.delta_f_hz(),
                                 level, ens.grid.bandwidth_hz());
        out(r) = acc / static_cast<double>(ens.n_modes());
    }
    return out;
}

double capacity_logdet_tone(const arma::cx_mat &h,
                            const arma::mat &noise_cov_w, double tx_psd_w,
                            std::size_t n_tx)
{
    const std::size_t n_rx = h.n_rows;
    if (noise_cov_w.n_rows != n_rx || noise_cov_w.n_cols != n_rx)
        raise(ErrorCode::dimension_mismatch,
              "noise covariance dimension does not match rx count");
    arma::mat chol_lower;
    if (!arma::chol(chol_lower, noise_cov_w, "lower"))
        raise(ErrorCode::singular_noise,
              "noise covariance is not positive definite");
    const arma::cx_mat whitened =
        arma::solve(arma::trimatl(arma::cx_mat(
                        chol_lower, arma::mat(n_rx, n_rx, arma::fill::zeros))),
                    h);
    arma::cx_mat gram =
        arma::eye<arma::cx_mat>(n_rx, n_rx) +
        (tx_psd_w / static_cast<double>(n_tx)) * whitened * whitened.t();
    arma::cx_mat upper;
    if (!arma::chol(upper, gram))
        raise(ErrorCode::singular_noise,
              "capacity Gram matrix lost positive definiteness");
    double log2_det = 0.0;
    for (std::size_t i = 0; i < n_rx; ++i)
        log2_det += 2.0 * std::log2(upper(i, i).real());
    return log2_det;
}

arma::vec mimo_capacity(const MimoChannelEnsemble &ens, const TxSpec &tx,
                        const NoiseModel &noise)
{
    if (noise.n_rx() != ens.n_rx)
        raise(ErrorCode::dimension_mismatch,
              "noise model has " + std::to_string(noise.n_rx()) +
                  " rx modes, ensemble has " + std::to_string(ens.n_rx));
    check_tx_noise_grids(ens.grid, tx, noise);

    const std::size_t m = ens.grid.m_samples;
    const double delta_f = ens.grid.delta_f_hz();

    // Per-tone whitening factors are shared by all realizations.
    std::vector<arma::cx_mat> whiteners(noise.white ? 1 : m);
    const std::size_t n_rx = ens.n_rx;
    for (std::size_t k = 0; k < whiteners.size(); ++k)
    {
        arma::mat chol_lower;
        if (!arma::chol(chol_lower, noise_covariance_w(noise, k), "lower"))
            raise(ErrorCode::singular_noise,
                  "noise covariance is not positive definite");
        whiteners[k] = arma::cx_mat(
            chol_lower, arma::mat(n_rx, n_rx, arma::fill::zeros));
    }

    arma::vec out(ens.n_meas());
    arma::cx_mat h_tone(ens.n_rx, ens.n_tx);
    for (std::size_t r = 0; r < ens.n_meas(); ++r)
    {
        double bits_per_s = 0.0;
        for (std::size_t k = 0; k < m; ++k)
        {
            for (std::size_t rx = 0; rx < ens.n_rx; ++rx)
                for (std::size_t txi = 0; txi < ens.n_tx; ++txi)
                    h_tone(rx, txi) = ens.at(r, rx, txi, k);
            const arma::cx_mat &lower = whiteners[noise.white ? 0 : k];
            const arma::cx_mat whitened =
                arma::solve(arma::trimatl(lower), h_tone);
            arma::cx_mat gram =
                arma::eye<arma::cx_mat>(n_rx, n_rx) +
                (tx_psd_w(tx, k) / static_cast<double>(ens.n_tx)) *
                    whitened * whitened.t();
            arma::cx_mat upper;
            if (!arma::chol(upper, gram))
                raise(ErrorCode::singular_noise,
                      "capacity Gram matrix lost positive definiteness");
            for (std::size_t i = 0; i < n_rx; ++i)
                bits_per_s += 2.0 * std::log2(upper(i, i).real());
        }
        out(r) = delta_f * bits_per_s;
    }
    return out;
}

arma::vec mimo_capacity(const ChannelEnsemble &ens, const TxSpec &tx,
                        const NoiseModel &noise)
{
    if (noise.n_rx() != 1)
        raise(ErrorCode::dimension_mismatch,
              "SISO capacity needs a 1-mode noise model");
    check_tx_noise_grids(ens.grid, tx, noise);

    const std::size_t m = ens.grid.m_samples;
    const double delta_f = ens.grid.delta_f_hz();
    arma::vec out(ens.n_meas());
    for (std::size_t r = 0; r < ens.n_meas(); ++r)
    {
        double bits_per_s = 0.0;
        for (std::size_t k = 0; k < m; ++k)
        {
            const double noise_w =
                noise_covariance_w(noise, noise.white ? 0 : k)(0, 0);
            if (noise_w <= 0.0)
                raise(ErrorCode::singular_noise,
                      "noise PSD must be positive");
            const double snr =
                tx_psd_w(tx, k) * std::norm(ens.data(r, k)) / noise_w;
            bits_per_s += std::log2(1.0 + snr);
        }
        out(r) = delta_f * bits_per_s;
    }
    return out;
}

arma::vec ccdf(const arma::vec &values, const arma::vec &grid)
{
    if (values.n_elem == 0)
        raise(ErrorCode::empty_input, "ccdf needs a non-empty sample vector");
    arma::vec out(grid.n_elem);
    const double n = static_cast<double>(values.n_elem);
    for (arma::uword g = 0; g < grid.n_elem; ++g)
    {
        std::size_t count = 0;
        for (arma::uword i = 0; i < values.n_elem; ++i)
            if (values(i) > grid(g))
                ++count;
        out(g) = static_cast<double>(count) / n;
    }
    return out;
}

namespace
{

MetricsReport finalize_report(MetricsReport report)
{
    report.avg_acg_db = arma::mean(report.acg_db);
    report.avg_rms_ds_s = arma::mean(report.rms_ds_s);
    report.avg_cb_hz = arma::mean(report.cb_hz);
    report.avg_capacity_bps = arma::mean(report.capacity_bps);
    return report;
}

} // namespace

MetricsReport compute_metrics(const ChannelEnsemble &ens, const TxSpec &tx,
                              const NoiseModel &noise, double cb_level)
{
    MetricsReport report;
    report.acg_db = acg(ens);
    report.rms_ds_s = rms_delay_spread(ens);
    report.cb_hz = coherence_bandwidth(ens, cb_level);
    report.capacity_bps = mimo_capacity(ens, tx, noise);
    return finalize_report(std::move(report));
}

MetricsReport compute_metrics(const MimoChannelEnsemble &ens,
                              const TxSpec &tx, const NoiseModel &noise,
                              double cb_level)
{
    MetricsReport report;
    report.acg_db = acg(ens);
    report.rms_ds_s = rms_delay_spread(ens);
    report.cb_hz = coherence_bandwidth(ens, cb_level);
    report.capacity_bps = mimo_capacity(ens, tx, noise);
    return finalize_report(std::move(report));
}

} // namespace plcsynth
