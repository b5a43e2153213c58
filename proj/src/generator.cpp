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

#include "plcsynth/generator.hpp"

#include <chrono>
#include <cmath>

#include "plcsynth/mathutil.hpp"
#include "plcsynth/rng.hpp"
#include "parallel.hpp"

namespace plcsynth
{

namespace
{

std::string utc_timestamp()
{
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

} // namespace

SisoChannelModel fit_siso(const ChannelEnsemble &ens)
{
    if (ens.n_meas() < 2)
        raise(ErrorCode::too_few_realizations,
              "fit_siso needs at least 2 realizations");
    const LogCfr log_cfr = log_transform(ens);
    SisoChannelModel model;
    model.grid = ens.grid;
    model.amp = estimate_gaussian_params(log_cfr.amp_db);
    model.phase_cov = estimate_phase_cov(log_cfr.phase);
    model.fit_meta.source_n_meas = ens.n_meas();
    model.fit_meta.created_utc = utc_timestamp();
    return model;
}

ChannelEnsemble generate_siso(const SisoChannelModel &model, std::size_t n,
                              std::uint64_t seed, int threads)
{
    if (n < 1)
        raise(ErrorCode::usage_error, "realization count must be >= 1");
    const std::size_t m = model.grid.m_samples;
    if (model.amp.cov.n_rows != m || model.phase_cov.norm_cov.n_rows != m)
        raise(ErrorCode::dimension_mismatch,
              "model parameter dimensions do not match the grid");

    const arma::mat amp = sample_correlated_normals(
        model.amp, n, rng::derive_seed(seed, rng::kStreamAmplitude), threads);
    const arma::mat u = sample_correlated_uniforms(
        CorrelationMatrix{model.phase_cov.norm_cov}, n,
        rng::derive_seed(seed, rng::kStreamPhase), threads);

    arma::cx_mat h(n, m);
    detail::parallel_for(n, threads, [&](std::size_t r) {
        for (std::size_t k = 0; k < m; ++k)
        {
            const double phase = kPi * (2.0 * u(r, k) - 1.0);
            h(r, k) = std::polar(std::exp(amp(r, k)), phase);
        }
    });
    return make_ensemble(model.grid, std::move(h));
}

MimoChannelModel fit_mimo(const MimoChannelEnsemble &mimo)
{
    if (mimo.n_meas() < 2)
        raise(ErrorCode::too_few_realizations,
              "fit_mimo needs at least 2 realizations");
    const ChannelEnsemble reshaped = reshape_mimo(mimo);
    const LogCfr log_cfr = log_transform(reshaped);

    MimoChannelModel model;
    model.grid = mimo.grid;
    model.n_rx = mimo.n_rx;
    model.n_tx = mimo.n_tx;
    model.amp_joint = estimate_gaussian_params(log_cfr.amp_db);
    model.slope_dist = estimate_slope_distribution(mimo);
    model.fit_meta.source_n_meas = mimo.n_meas();
    model.fit_meta.created_utc = utc_timestamp();
    model.rx_mode_names = mimo.rx_mode_names;
    model.tx_mode_names = mimo.tx_mode_names;
    return model;
}

arma::mat synthesize_phase(const SlopeDistribution &slope_dist,
                           const FrequencyGrid &grid, std::size_t n_rx,
                           std::size_t n_tx, std::size_t n,
                           std::uint64_t seed, int threads)
{
    if (slope_dist.samples.n_elem == 0 &&
        slope_dist.sampling_mode ==
            SlopeDistribution::SamplingMode::empirical)
        raise(ErrorCode::empty_slope_samples,
              "empirical slope sampling needs at least one slope sample");
    if (n < 1)
        raise(ErrorCode::usage_error, "realization count must be >= 1");

    const std::size_t m = grid.m_samples;
    const std::size_t n_modes = n_rx * n_tx;
    const arma::vec freqs = grid.frequencies();
    const double f0 = freqs(0);
    const std::uint64_t phase_master =
        rng::derive_seed(seed, rng::kStreamPhase);

    arma::mat phase(n, n_modes * m);
    detail::parallel_for(n, threads, [&](std::size_t r) {
        rng::Stream stream(phase_master, r);
        for (std::size_t mode = 0; mode < n_modes; ++mode)
        {
            double slope;
            if (slope_dist.sampling_mode ==
                SlopeDistribution::SamplingMode::empirical)
                slope = slope_dist.samples(
                    stream.uniform_index(slope_dist.samples.n_elem));
            else
                slope = slope_dist.mean + slope_dist.stddev * stream.normal();
            const double intercept = stream.uniform_angle();
            for (std::size_t k = 0; k < m; ++k)
                phase(r, mode * m + k) =
                    wrap_to_pi(slope * (freqs(k) - f0) + intercept);
        }
    });
    return phase;
}

MimoChannelEnsemble generate_mimo(const MimoChannelModel &model,
                                  std::size_t n, std::uint64_t seed,
                                  int threads)
{
    if (n < 1)
        raise(ErrorCode::usage_error, "realization count must be >= 1");
    const std::size_t d = model.n_rx * model.n_tx * model.grid.m_samples;
    if (model.amp_joint.cov.n_rows != d)
        raise(ErrorCode::dimension_mismatch,
              "joint covariance dimension does not match n_rx*n_tx*m");

    const arma::mat amp = sample_correlated_normals(
        model.amp_joint, n, rng::derive_seed(seed, rng::kStreamAmplitude),
        threads);
    const arma::mat phase =
        synthesize_phase(model.slope_dist, model.grid, model.n_rx,
                         model.n_tx, n, seed, threads);

    arma::cx_mat h(n, d);
    detail::parallel_for(n, threads, [&](std::size_t r) {
        for (std::size_t c = 0; c < d; ++c)
            h(r, c) = std::polar(std::exp(amp(r, c)), phase(r, c));
    });
    return make_mimo_ensemble(model.grid, model.n_rx, model.n_tx,
                              std::move(h), model.rx_mode_names,
                              model.tx_mode_names);
}

} // namespace plcsynth
