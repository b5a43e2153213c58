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
// Fitting of SISO/MIMO channel models from reference ensembles and
// synthesis of statistically equivalent realizations.
//
// SISO: log-amplitude is a correlated Gaussian field (mean + covariance
// from the reference), phase is a correlated uniform field generated
// through the Gaussian copula with the reference's normalized covariance.
// Amplitude and phase streams are independent.
//
// MIMO: the (rx, tx, frequency) axes are flattened and the joint
// log-amplitude covariance is fitted on the reshaped matrix, capturing
// spatial and frequency correlation together. Phases are synthesized per
// mode by drawing an unwrapped-phase slope from the fitted slope
// distribution and a uniform intercept.

#pragma once

#include <armadillo>
#include <cstddef>
#include <cstdint>
#include <string>

#include "plcsynth/copula.hpp"
#include "plcsynth/ensemble.hpp"
#include "plcsynth/estimation.hpp"

namespace plcsynth
{

struct FitMeta
{
    std::size_t source_n_meas = 0;
    std::string created_utc;
    int format_version = 1;
    std::size_t decimation = 1;
};

struct SisoChannelModel
{
    FrequencyGrid grid;
    GaussianFieldParams amp;   // on m_samples points, natural-log scale
    PhaseCovParams phase_cov;  // on m_samples points
    FitMeta fit_meta;
};

struct MimoChannelModel
{
    FrequencyGrid grid;
    std::size_t n_rx = 0;
    std::size_t n_tx = 0;
    GaussianFieldParams amp_joint; // on n_rx*n_tx*m_samples points
    SlopeDistribution slope_dist;
    FitMeta fit_meta;
    std::vector<std::string> rx_mode_names;
    std::vector<std::string> tx_mode_names;
};

/// Fits amplitude mean/covariance and phase normalized covariance from a
/// reference ensemble. Throws too_few_realizations for N < 2 and
/// propagates zero_entry from the log transform.
SisoChannelModel fit_siso(const ChannelEnsemble &ens);

/// Draws n new realizations from the model: exp of correlated normals
/// times exp(j*pi*(2u - 1)) with copula-correlated uniforms u. Fully
/// deterministic in (model, n, seed); threads only split the work.
ChannelEnsemble generate_siso(const SisoChannelModel &model, std::size_t n,
                              std::uint64_t seed, int threads = 1);

/// Joint log-amplitude fit on the reshaped ensemble plus the pooled
/// unwrapped-phase slope distribution.
MimoChannelModel fit_mimo(const MimoChannelEnsemble &mimo);

/// Per-(realization, rx, tx) phase profiles phi(f_k) = s*(f_k - f_0) + b,
/// wrapped to (-pi, pi], with slope s drawn from the distribution
/// (empirical resample or Gaussian summary) and intercept b uniform on
/// (-pi, pi). Returns n x (n_rx*n_tx*m) in the flattened column order.
arma::mat synthesize_phase(const SlopeDistribution &slope_dist,
                           const FrequencyGrid &grid, std::size_t n_rx,
                           std::size_t n_tx, std::size_t n,
                           std::uint64_t seed, int threads = 1);

/// Correlated joint amplitudes, slope-based phases, H = A*exp(j*phi).
MimoChannelEnsemble generate_mimo(const MimoChannelModel &model,
                                  std::size_t n, std::uint64_t seed,
                                  int threads = 1);

} // namespace plcsynth
