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
// Comparison of reference and synthesized ensembles: covariance deltas,
// metric-average tables, and C-CDF discrepancies, with a threshold gate
// for the validate CLI.

#pragma once

#include <armadillo>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "plcsynth/ensemble.hpp"
#include "plcsynth/metrics.hpp"

namespace plcsynth
{

struct CovarianceDelta
{
    double max_abs = 0.0;
    double rmse = 0.0;
};

/// Delta split by the transition mask: entries whose reference
/// 4-neighbor gradient exceeds the configured threshold count as
/// transition entries and are checked only against the looser bound.
struct MaskedCovarianceDelta
{
    double max_abs = 0.0;        // over all entries
    double rmse = 0.0;
    double max_abs_smooth = 0.0; // over non-transition entries only
    double transition_fraction = 0.0;
};

struct CcdfDelta
{
    double max_vertical_prob = 0.0;
    double max_horizontal = 0.0; // same unit as the samples
};

/// Table-I style ensemble averages for one ensemble.
struct MetricAverages
{
    double acg_db = 0.0;
    double rms_ds_s = 0.0;
    double cb_hz = 0.0;
    double capacity_bps = 0.0;
};

struct SummaryTable
{
    MetricAverages reference;
    MetricAverages simulated;
    double acg_diff_db = 0.0;       // simulated - reference
    double rms_ds_diff_s = 0.0;
    double cb_diff_hz = 0.0;
    double capacity_rel_diff = 0.0; // (sim - ref) / ref
};

struct ValidationThresholds
{
    double cov_max_abs = 0.15;
    double cov_max_abs_smooth = 0.05;
    double cov_transition_gradient = 0.05;
    double ccdf_max_horizontal_rel_std = 0.1;
    std::optional<double> ccdf_max_horizontal_abs;
    double acg_diff_db = 2.0;
    double rms_ds_diff_s = 5e-8;
    std::optional<double> capacity_rel_diff;
};

struct ValidationReport
{
    MaskedCovarianceDelta amp_cov;
    MaskedCovarianceDelta phase_cov;
    SummaryTable table;
    CcdfDelta ccdf_delta;
    double ref_capacity_std_bps = 0.0;
    std::vector<std::string> violations;
    nlohmann::json config_echo;
};

/// Entrywise max absolute and RMS difference; dimension_mismatch on
/// unequal shapes.
CovarianceDelta compare_covariance(const arma::mat &r_ref,
                                   const arma::mat &r_sim);

MaskedCovarianceDelta compare_covariance_masked(const arma::mat &r_ref,
                                                const arma::mat &r_sim,
                                                double transition_gradient);

/// Vertical: max |CCDF_ref - CCDF_sim| over the merged sample grid.
/// Horizontal: max |q_ref(p) - q_sim(p)| over p = 0.01..0.99 step 0.01
/// with linearly interpolated empirical quantiles.
CcdfDelta compare_ccdf(const arma::vec &ref_values,
                       const arma::vec &sim_values);

/// Linearly interpolated empirical quantile (h = (n-1)p convention).
double interpolated_quantile(const arma::vec &values, double p);

SummaryTable summary_table(const MetricsReport &ref_metrics,
                           const MetricsReport &sim_metrics);

/// Full comparison of two ensembles of the same kind and grid.
ValidationReport validate_pair(const ChannelEnsemble &ref,
                               const ChannelEnsemble &sim, const TxSpec &tx,
                               const NoiseModel &noise,
                               const ValidationThresholds &thresholds);
ValidationReport validate_pair(const MimoChannelEnsemble &ref,
                               const MimoChannelEnsemble &sim,
                               const TxSpec &tx, const NoiseModel &noise,
                               const ValidationThresholds &thresholds);

ValidationThresholds load_thresholds(const std::string &json_path);

/// report.json (machine) plus report.txt (aligned table).
void write_validation_report(const ValidationReport &report,
                             const std::string &json_path,
                             const std::string &txt_path);

} // namespace plcsynth
