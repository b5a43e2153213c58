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
// Estimation of the statistical ingredients of the model from a reference
// ensemble: amplitude mean/covariance, phase normalized covariance,
// amplitude/phase cross-covariance diagnostics, and the unwrapped phase
// slope distribution used by the MIMO phase synthesis.

#pragma once

#include <armadillo>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>

#include "plcsynth/ensemble.hpp"
#include "plcsynth/error.hpp"

namespace plcsynth
{

/// Mean, covariance and normalized covariance of a Gaussian field sampled
/// on D points.
struct GaussianFieldParams
{
    std::size_t grid_len = 0;
    arma::vec mean;     // length D
    arma::mat cov;      // D x D, symmetric, diag >= 0
    arma::mat norm_cov; // D x D, unit diagonal, entries in [-1, 1]
};

/// Normalized covariance of the wrapped phase field.
struct PhaseCovParams
{
    arma::mat norm_cov; // D x D, unit diagonal
};

/// Average magnitudes of the amplitude/phase cross terms; both are close
/// to zero when amplitude and phase are uncorrelated.
struct CrossCovReport
{
    double mean_abs_cross = 0.0; // mean |normalized cross-covariance|
    double mean_abs_imag = 0.0;  // mean |imag part of the joint covariance|
};

/// Fitted unwrapped-phase slopes, one per (realization, rx, tx) triple.
struct SlopeDistribution
{
    enum class SamplingMode
    {
        empirical,
        gaussian
    };

    arma::vec samples; // rad/Hz
    double mean = 0.0;
    double stddev = 0.0;
    SamplingMode sampling_mode = SamplingMode::empirical;
};

/// Covariance scaled by the products of column standard deviations;
/// zero-variance columns get 0 off-diagonal / 1 diagonal entries.
arma::mat normalize_covariance(const arma::mat &cov);

/// Column mean + unbiased (N-1) sample covariance + normalized covariance.
/// Zero-variance columns get 0 off-diagonal / 1 diagonal normalized
/// entries. Throws too_few_realizations for N < 2.
GaussianFieldParams estimate_gaussian_params(const arma::mat &amp_db);

/// Normalized covariance of wrapped phase columns (entries must lie in
/// (-pi, pi]); same normalization rule as the amplitudes.
PhaseCovParams estimate_phase_cov(const arma::mat &phase);

/// Normalized cross-covariance R_cross(i,j) between amplitude column i and
/// phase column j, plus the skew-symmetric imaginary part
/// R_cross^T - R_cross of the joint log-CFR covariance.
CrossCovReport cross_cov_diagnostics(const arma::mat &amp_db,
                                     const arma::mat &phase);

/// 2*pi-discontinuity correction: out[0] = in[0] and successive
/// differences are shifted by multiples of 2*pi into [-pi, pi].
arma::vec unwrap_phase(const arma::vec &wrapped);

/// Ordinary least-squares slope (with intercept, discarded) of y over x.
double least_squares_slope(const arma::vec &x, const arma::vec &y);

/// Unwraps each (realization, rx, tx) phase profile over frequency, fits
/// a straight line and collects the slopes. `mode` restricts the fit to a
/// single (rx, tx) pair; by default all modes are pooled.
SlopeDistribution estimate_slope_distribution(
    const MimoChannelEnsemble &mimo,
    std::optional<std::pair<std::size_t, std::size_t>> mode = std::nullopt);

} // namespace plcsynth
