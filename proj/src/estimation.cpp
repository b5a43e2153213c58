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

#include "plcsynth/estimation.hpp"

#include <cmath>

#include "plcsynth/mathutil.hpp"

namespace plcsynth
{

arma::mat normalize_covariance(const arma::mat &cov)
{
    const std::size_t d = cov.n_rows;
    arma::vec sd(d);
    for (std::size_t i = 0; i < d; ++i)
        sd(i) = cov(i, i) > 0.0 ? std::sqrt(cov(i, i)) : 0.0;
    arma::mat norm(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
        {
            if (i == j)
                norm(i, j) = 1.0;
            else if (sd(i) > 0.0 && sd(j) > 0.0)
                norm(i, j) = cov(i, j) / (sd(i) * sd(j));
            else
                norm(i, j) = 0.0;
        }
    return norm;
}

namespace
{

void require_rows(const arma::mat &m, const char *what)
{
    if (m.n_rows < 2)
        raise(ErrorCode::too_few_realizations,
              std::string(what) + " needs at least 2 realizations, got " +
                  std::to_string(m.n_rows));
}

} // namespace

GaussianFieldParams estimate_gaussian_params(const arma::mat &amp_db)
{
    require_rows(amp_db, "estimate_gaussian_params");
    GaussianFieldParams params;
    params.grid_len = amp_db.n_cols;
    params.mean = arma::mean(amp_db, 0).t();
    params.cov = arma::cov(amp_db); // unbiased, N-1 divisor
    params.cov = 0.5 * (params.cov + params.cov.t());
    params.norm_cov = normalize_covariance(params.cov);
    return params;
}

PhaseCovParams estimate_phase_cov(const arma::mat &phase)
{
    require_rows(phase, "estimate_phase_cov");
    const double slack = 1e-9;
    if (phase.min() <= -kPi - slack || phase.max() > kPi + slack)
        raise(ErrorCode::shape_mismatch,
              "phase entries must be wrapped to (-pi, pi]");
    arma::mat cov = arma::cov(phase);
    cov = 0.5 * (cov + cov.t());
    return PhaseCovParams{normalize_covariance(cov)};
}

CrossCovReport cross_cov_diagnostics(const arma::mat &amp_db,
                                     const arma::mat &phase)
{
    if (amp_db.n_rows != phase.n_rows || amp_db.n_cols != phase.n_cols)
        raise(ErrorCode::shape_mismatch,
              "amplitude and phase matrices must have identical shapes");
    require_rows(amp_db, "cross_cov_diagnostics");

    // Normalized cross-covariance between amplitude column i and phase
    // column j.
    arma::mat cross = arma::cov(amp_db, phase); // D x D, N-1 divisor
    const arma::vec sd_amp =
        arma::sqrt(arma::var(amp_db, 0, 0)).t(); // unbiased column vars
    const arma::vec sd_phase = arma::sqrt(arma::var(phase, 0, 0)).t();
    const std::size_t d = cross.n_rows;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
        {
            if (sd_amp(i) > 0.0 && sd_phase(j) > 0.0)
                cross(i, j) /= sd_amp(i) * sd_phase(j);
            else
                cross(i, j) = 0.0;
        }

    const arma::mat imag_part = cross.t() - cross;
    CrossCovReport report;
    report.mean_abs_cross = arma::mean(arma::mean(arma::abs(cross)));
    report.mean_abs_imag = arma::mean(arma::mean(arma::abs(imag_part)));
    return report;
}

arma::vec unwrap_phase(const arma::vec &wrapped)
{
    arma::vec out(wrapped.n_elem);
    if (wrapped.n_elem == 0)
        return out;
    out(0) = wrapped(0);
    double offset = 0.0;
    for (arma::uword k = 1; k < wrapped.n_elem; ++k)
    {
        const double diff = wrapped(k) - wrapped(k - 1);
        if (diff > kPi)
            offset -= kTwoPi;
        else if (diff <= -kPi)
            offset += kTwoPi;
        out(k) = wrapped(k) + offset;
    }
    return out;
}

double least_squares_slope(const arma::vec &x, const arma::vec &y)
{
    if (x.n_elem != y.n_elem || x.n_elem < 2)
        raise(ErrorCode::shape_mismatch,
              "slope fit needs two equally sized vectors of length >= 2");
    const double x_mean = arma::mean(x);
    const double y_mean = arma::mean(y);
    double num = 0.0;
    double den = 0.0;
    for (arma::uword k = 0; k < x.n_elem; ++k)
    {
        const double dx = x(k) - x_mean;
        num += dx * (y(k) - y_mean);
        den += dx * dx;
    }
    if (den == 0.0)
        raise(ErrorCode::degenerate_grid, "slope fit abscissae are constant");
    return num / den;
}

SlopeDistribution estimate_slope_distribution(
    const MimoChannelEnsemble &mimo,
    std::optional<std::pair<std::size_t, std::size_t>> mode)
{
    if (mimo.grid.m_samples < 2)
        raise(ErrorCode::degenerate_grid,
              "slope estimation needs at least 2 frequency samples");
    const arma::vec freqs = mimo.grid.frequencies();

    std::vector<std::pair<std::size_t, std::size_t>> modes;
    if (mode)
    {
        if (mode->first >= mimo.n_rx || mode->second >= mimo.n_tx)
            raise(ErrorCode::dimension_mismatch, "mode index out of range");
        modes.push_back(*mode);
    }
    else
    {
        for (std::size_t rx = 0; rx < mimo.n_rx; ++rx)
            for (std::size_t tx = 0; tx < mimo.n_tx; ++tx)
                modes.emplace_back(rx, tx);
    }

    SlopeDistribution dist;
    dist.samples.set_size(mimo.n_meas() * modes.size());
    std::size_t idx = 0;
    for (std::size_t meas = 0; meas < mimo.n_meas(); ++meas)
        for (const auto &[rx, tx] : modes)
        {
            const arma::cx_vec h = mimo.cfr(meas, rx, tx);
            arma::vec phase(h.n_elem);
            for (arma::uword k = 0; k < h.n_elem; ++k)
                phase(k) = std::arg(h(k));
            dist.samples(idx++) = least_squares_slope(freqs,
                                                      unwrap_phase(phase));
        }

    dist.mean = arma::mean(dist.samples);
    dist.stddev =
        dist.samples.n_elem > 1 ? arma::stddev(dist.samples) : 0.0;
    dist.sampling_mode = SlopeDistribution::SamplingMode::empirical;
    return dist;
}

} // namespace plcsynth
