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

#include "plcsynth/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

#include "plcsynth/estimation.hpp"

namespace plcsynth
{

namespace
{

// Fraction of values strictly greater than x, on a pre-sorted vector.
double ccdf_sorted(const std::vector<double> &sorted, double x)
{
    const auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
    return static_cast<double>(sorted.end() - it) /
           static_cast<double>(sorted.size());
}

// Transition mask: reference entries whose 4-neighbor gradient exceeds
// the threshold. Mirrors the visually "sharp" regions of a covariance
// image without requiring manual annotation.
arma::umat transition_mask(const arma::mat &ref, double gradient)
{
    const arma::uword n = ref.n_rows;
    arma::umat mask(n, ref.n_cols, arma::fill::zeros);
    for (arma::uword i = 0; i < n; ++i)
        for (arma::uword j = 0; j < ref.n_cols; ++j)
        {
            double g = 0.0;
            if (i > 0)
                g = std::max(g, std::abs(ref(i, j) - ref(i - 1, j)));
            if (i + 1 < ref.n_rows)
                g = std::max(g, std::abs(ref(i, j) - ref(i + 1, j)));
            if (j > 0)
                g = std::max(g, std::abs(ref(i, j) - ref(i, j - 1)));
            if (j + 1 < ref.n_cols)
                g = std::max(g, std::abs(ref(i, j) - ref(i, j + 1)));
            mask(i, j) = g > gradient ? 1 : 0;
        }
    return mask;
}

void check_same_shape(const arma::mat &a, const arma::mat &b)
{
    if (a.n_rows != b.n_rows || a.n_cols != b.n_cols)
        raise(ErrorCode::dimension_mismatch,
              "covariance matrices have different dimensions");
}

std::string format_double(const char *fmt, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

} // namespace

CovarianceDelta compare_covariance(const arma::mat &r_ref,
                                   const arma::mat &r_sim)
{
    check_same_shape(r_ref, r_sim);
    const arma::mat diff = arma::abs(r_ref - r_sim);
    CovarianceDelta delta;
    delta.max_abs = diff.max();
    delta.rmse = std::sqrt(arma::accu(diff % diff) /
                           static_cast<double>(diff.n_elem));
    return delta;
}

MaskedCovarianceDelta compare_covariance_masked(const arma::mat &r_ref,
                                                const arma::mat &r_sim,
                                                double transition_gradient)
{
    check_same_shape(r_ref, r_sim);
    const CovarianceDelta plain = compare_covariance(r_ref, r_sim);
    const arma::umat mask = transition_mask(r_ref, transition_gradient);
    MaskedCovarianceDelta delta;
    delta.max_abs = plain.max_abs;
    delta.rmse = plain.rmse;
    double max_smooth = 0.0;
    arma::uword n_transition = 0;
    for (arma::uword i = 0; i < r_ref.n_rows; ++i)
        for (arma::uword j = 0; j < r_ref.n_cols; ++j)
        {
            if (mask(i, j))
            {
                ++n_transition;
                continue;
            }
            max_smooth =
                std::max(max_smooth, std::abs(r_ref(i, j) - r_sim(i, j)));
        }
    delta.max_abs_smooth = max_smooth;
    delta.transition_fraction = static_cast<double>(n_transition) /
                                static_cast<double>(r_ref.n_elem);
    return delta;
}

double interpolated_quantile(const arma::vec &values, double p)
{
    if (values.n_elem == 0)
        raise(ErrorCode::empty_input, "quantile of an empty vector");
    arma::vec sorted = arma::sort(values);
    if (sorted.n_elem == 1)
        return sorted(0);
    const double h =
        std::clamp(p, 0.0, 1.0) * static_cast<double>(sorted.n_elem - 1);
    const auto lo = static_cast<arma::uword>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.n_elem - 1);
    const double frac = h - std::floor(h);
    return sorted(lo) + frac * (sorted(hi) - sorted(lo));
}

CcdfDelta compare_ccdf(const arma::vec &ref_values,
                       const arma::vec &sim_values)
{
    if (ref_values.n_elem == 0 || sim_values.n_elem == 0)
        raise(ErrorCode::empty_input, "compare_ccdf needs non-empty samples");

    std::vector<double> ref_sorted(ref_values.begin(), ref_values.end());
    std::vector<double> sim_sorted(sim_values.begin(), sim_values.end());
    std::sort(ref_sorted.begin(), ref_sorted.end());
    std::sort(sim_sorted.begin(), sim_sorted.end());

    CcdfDelta delta;
    for (const auto &grid : {ref_sorted, sim_sorted})
        for (double g : grid)
            delta.max_vertical_prob =
                std::max(delta.max_vertical_prob,
                         std::abs(ccdf_sorted(ref_sorted, g) -
                                  ccdf_sorted(sim_sorted, g)));

    for (int level = 1; level <= 99; ++level)
    {
        const double p = static_cast<double>(level) / 100.0;
        const double dq = std::abs(interpolated_quantile(ref_values, p) -
                                   interpolated_quantile(sim_values, p));
        delta.max_horizontal = std::max(delta.max_horizontal, dq);
    }
    return delta;
}

SummaryTable summary_table(const MetricsReport &ref_metrics,
                           const MetricsReport &sim_metrics)
{
    SummaryTable table;
    table.reference = {ref_metrics.avg_acg_db, ref_metrics.avg_rms_ds_s,
                       ref_metrics.avg_cb_hz, ref_metrics.avg_capacity_bps};
    table.simulated = {sim_metrics.avg_acg_db, sim_metrics.avg_rms_ds_s,
                       sim_metrics.avg_cb_hz, sim_metrics.avg_capacity_bps};
    table.acg_diff_db = table.simulated.acg_db - table.reference.acg_db;
    table.rms_ds_diff_s =
        table.simulated.rms_ds_s - table.reference.rms_ds_s;
    table.cb_diff_hz = table.simulated.cb_hz - table.reference.cb_hz;
    table.capacity_rel_diff =
        table.reference.capacity_bps != 0.0
            ? (table.simulated.capacity_bps - table.reference.capacity_bps) /
                  table.reference.capacity_bps
            : 0.0;
    return table;
}

namespace
{

void apply_thresholds(ValidationReport &report,
                      const ValidationThresholds &thresholds)
{
    auto check = [&](bool violated, const std::string &text) {
        if (violated)
            report.violations.push_back(text);
    };

    auto check_cov = [&](const char *name,
                         const MaskedCovarianceDelta &delta) {
        check(delta.max_abs > thresholds.cov_max_abs,
              std::string(name) + " covariance max_abs " +
                  format_double("%.4f", delta.max_abs) + " > " +
                  format_double("%.4f", thresholds.cov_max_abs));
        check(delta.max_abs_smooth > thresholds.cov_max_abs_smooth,
              std::string(name) + " covariance max_abs (smooth region) " +
                  format_double("%.4f", delta.max_abs_smooth) + " > " +
                  format_double("%.4f", thresholds.cov_max_abs_smooth));
    };
    check_cov("amplitude", report.amp_cov);
    check_cov("phase", report.phase_cov);

    const double horiz_limit =
        thresholds.ccdf_max_horizontal_abs
            ? *thresholds.ccdf_max_horizontal_abs
            : thresholds.ccdf_max_horizontal_rel_std *
                  report.ref_capacity_std_bps;
    check(report.ccdf_delta.max_horizontal > horiz_limit,
          "C-CDF max horizontal discrepancy " +
              format_double("%.4g", report.ccdf_delta.max_horizontal) +
              " bps > " + format_double("%.4g", horiz_limit) + " bps");

    check(std::abs(report.table.acg_diff_db) > thresholds.acg_diff_db,
          "ACG difference " +
              format_double("%.3f", report.table.acg_diff_db) + " dB > +-" +
              format_double("%.3f", thresholds.acg_diff_db) + " dB");
    check(std::abs(report.table.rms_ds_diff_s) > thresholds.rms_ds_diff_s,
          "RMS-DS difference " +
              format_double("%.4g", report.table.rms_ds_diff_s) + " s > +-" +
              format_double("%.4g", thresholds.rms_ds_diff_s) + " s");
    if (thresholds.capacity_rel_diff)
        check(std::abs(report.table.capacity_rel_diff) >
                  *thresholds.capacity_rel_diff,
              "capacity relative difference " +
                  format_double("%.4f", report.table.capacity_rel_diff) +
                  " > +-" +
                  format_double("%.4f", *thresholds.capacity_rel_diff));
}

nlohmann::json thresholds_to_json(const ValidationThresholds &t)
{
    nlohmann::json j = {
        {"cov_max_abs", t.cov_max_abs},
        {"cov_max_abs_smooth", t.cov_max_abs_smooth},
        {"cov_transition_gradient", t.cov_transition_gradient},
        {"ccdf_max_horizontal_rel_std", t.ccdf_max_horizontal_rel_std},
        {"acg_diff_db", t.acg_diff_db},
        {"rms_ds_diff_s", t.rms_ds_diff_s},
    };
    if (t.ccdf_max_horizontal_abs)
        j["ccdf_max_horizontal_abs"] = *t.ccdf_max_horizontal_abs;
    if (t.capacity_rel_diff)
        j["capacity_rel_diff"] = *t.capacity_rel_diff;
    return j;
}

template <typename Ensemble>
ValidationReport validate_impl(const Ensemble &ref, const Ensemble &sim,
                               const arma::mat &ref_amp,
                               const arma::mat &ref_phase,
                               const arma::mat &sim_amp,
                               const arma::mat &sim_phase, const TxSpec &tx,
                               const NoiseModel &noise,
                               const ValidationThresholds &thresholds)
{
    ValidationReport report;
    report.amp_cov = compare_covariance_masked(
        estimate_gaussian_params(ref_amp).norm_cov,
        estimate_gaussian_params(sim_amp).norm_cov,
        thresholds.cov_transition_gradient);
    report.phase_cov = compare_covariance_masked(
        estimate_phase_cov(ref_phase).norm_cov,
        estimate_phase_cov(sim_phase).norm_cov,
        thresholds.cov_transition_gradient);

    const MetricsReport ref_metrics = compute_metrics(ref, tx, noise);
    const MetricsReport sim_metrics = compute_metrics(sim, tx, noise);
    report.table = summary_table(ref_metrics, sim_metrics);
    report.ccdf_delta =
        compare_ccdf(ref_metrics.capacity_bps, sim_metrics.capacity_bps);
    report.ref_capacity_std_bps =
        ref_metrics.capacity_bps.n_elem > 1
            ? arma::stddev(ref_metrics.capacity_bps)
            : 0.0;

    report.config_echo["thresholds"] = thresholds_to_json(thresholds);
    report.config_echo["quantile_method"] =
        "linear interpolation, 99 levels (0.01..0.99)";
    report.config_echo["ccdf_vertical_grid"] = "merged sample values";
    report.config_echo["transition_rule"] =
        "reference 4-neighbor gradient > cov_transition_gradient";
    apply_thresholds(report, thresholds);
    return report;
}

} // namespace

ValidationReport validate_pair(const ChannelEnsemble &ref,
                               const ChannelEnsemble &sim, const TxSpec &tx,
                               const NoiseModel &noise,
                               const ValidationThresholds &thresholds)
{
    if (!ref.grid.compatible_with(sim.grid))
        raise(ErrorCode::grid_mismatch,
              "reference and simulated grids are not compatible");
    const LogCfr ref_log = log_transform(ref);
    const LogCfr sim_log = log_transform(sim);
    return validate_impl(ref, sim, ref_log.amp_db, ref_log.phase,
                         sim_log.amp_db, sim_log.phase, tx, noise,
                         thresholds);
}

ValidationReport validate_pair(const MimoChannelEnsemble &ref,
                               const MimoChannelEnsemble &sim,
                               const TxSpec &tx, const NoiseModel &noise,
                               const ValidationThresholds &thresholds)
{
    if (!ref.grid.compatible_with(sim.grid) || ref.n_rx != sim.n_rx ||
        ref.n_tx != sim.n_tx)
        raise(ErrorCode::grid_mismatch,
              "reference and simulated ensembles have different geometry");
    const LogCfr ref_log = log_transform(reshape_mimo(ref));
    const LogCfr sim_log = log_transform(reshape_mimo(sim));
    return validate_impl(ref, sim, ref_log.amp_db, ref_log.phase,
                         sim_log.amp_db, sim_log.phase, tx, noise,
                         thresholds);
}

ValidationThresholds load_thresholds(const std::string &json_path)
{
    std::ifstream in(json_path);
    if (!in)
        raise(ErrorCode::io_error,
              "cannot open thresholds file: " + json_path);
    nlohmann::json j;
    try
    {
        in >> j;
    }
    catch (const nlohmann::json::exception &e)
    {
        raise(ErrorCode::bad_format,
              "invalid thresholds JSON: " + std::string(e.what()));
    }
    ValidationThresholds t;
    t.cov_max_abs = j.value("cov_max_abs", t.cov_max_abs);
    t.cov_max_abs_smooth =
        j.value("cov_max_abs_smooth", t.cov_max_abs_smooth);
    t.cov_transition_gradient =
        j.value("cov_transition_gradient", t.cov_transition_gradient);
    t.ccdf_max_horizontal_rel_std = j.value("ccdf_max_horizontal_rel_std",
                                            t.ccdf_max_horizontal_rel_std);
    if (j.contains("ccdf_max_horizontal_abs"))
        t.ccdf_max_horizontal_abs =
            j["ccdf_max_horizontal_abs"].get<double>();
    t.acg_diff_db = j.value("acg_diff_db", t.acg_diff_db);
    t.rms_ds_diff_s = j.value("rms_ds_diff_s", t.rms_ds_diff_s);
    if (j.contains("capacity_rel_diff"))
        t.capacity_rel_diff = j["capacity_rel_diff"].get<double>();
    return t;
}

void write_validation_report(const ValidationReport &report,
                             const std::string &json_path,
                             const std::string &txt_path)
{
    auto masked_to_json = [](const MaskedCovarianceDelta &d) {
        return nlohmann::json{{"max_abs", d.max_abs},
                              {"rmse", d.rmse},
                              {"max_abs_smooth", d.max_abs_smooth},
                              {"transition_fraction", d.transition_fraction}};
    };
    auto averages_to_json = [](const MetricAverages &a) {
        return nlohmann::json{{"acg_db", a.acg_db},
                              {"rms_ds_s", a.rms_ds_s},
                              {"cb_hz", a.cb_hz},
                              {"capacity_bps", a.capacity_bps}};
    };

    nlohmann::json j;
    j["covariance"] = {{"amplitude", masked_to_json(report.amp_cov)},
                       {"phase", masked_to_json(report.phase_cov)}};
    j["table"] = {{"reference", averages_to_json(report.table.reference)},
                  {"simulated", averages_to_json(report.table.simulated)},
                  {"acg_diff_db", report.table.acg_diff_db},
                  {"rms_ds_diff_s", report.table.rms_ds_diff_s},
                  {"cb_diff_hz", report.table.cb_diff_hz},
                  {"capacity_rel_diff", report.table.capacity_rel_diff}};
    j["ccdf"] = {{"max_vertical_prob", report.ccdf_delta.max_vertical_prob},
                 {"max_horizontal_bps", report.ccdf_delta.max_horizontal}};
    j["ref_capacity_std_bps"] = report.ref_capacity_std_bps;
    j["violations"] = report.violations;
    j["config"] = report.config_echo;

    std::ofstream out_json(json_path);
    if (!out_json)
        raise(ErrorCode::io_error, "cannot write " + json_path);
    out_json << j.dump(2) << "\n";

    std::ofstream out(txt_path);
    if (!out)
        raise(ErrorCode::io_error, "cannot write " + txt_path);
    char line[256];
    out << "Channel ensemble comparison\n";
    out << "===========================\n\n";
    out << "Normalized covariance deltas\n";
    std::snprintf(line, sizeof(line),
                  "  %-10s max_abs=%.4f  rmse=%.4f  smooth_max=%.4f  "
                  "(transition entries: %.1f%%)\n",
                  "amplitude:", report.amp_cov.max_abs, report.amp_cov.rmse,
                  report.amp_cov.max_abs_smooth,
                  100.0 * report.amp_cov.transition_fraction);
    out << line;
    std::snprintf(line, sizeof(line),
                  "  %-10s max_abs=%.4f  rmse=%.4f  smooth_max=%.4f  "
                  "(transition entries: %.1f%%)\n",
                  "phase:", report.phase_cov.max_abs, report.phase_cov.rmse,
                  report.phase_cov.max_abs_smooth,
                  100.0 * report.phase_cov.transition_fraction);
    out << line;

    out << "\nAverage metrics (over realizations and spatial modes)\n";
    std::snprintf(line, sizeof(line), "  %-11s %10s %12s %12s %16s\n",
                  "Type", "ACG (dB)", "RMS-DS (us)", "CB (kHz)",
                  "Capacity (Gbps)");
    out << line;
    auto table_row = [&](const char *name, const MetricAverages &a) {
        std::snprintf(line, sizeof(line),
                      "  %-11s %10.2f %12.4f %12.2f %16.4f\n", name,
                      a.acg_db, a.rms_ds_s * 1e6, a.cb_hz * 1e-3,
                      a.capacity_bps * 1e-9);
        out << line;
    };
    table_row("Reference", report.table.reference);
    table_row("Simulated", report.table.simulated);
    std::snprintf(line, sizeof(line),
                  "  %-11s %10.2f %12.4f %12.2f %15.2f%%\n", "Diff",
                  report.table.acg_diff_db, report.table.rms_ds_diff_s * 1e6,
                  report.table.cb_diff_hz * 1e-3,
                  report.table.capacity_rel_diff * 100.0);
    out << line;

    out << "\nCapacity C-CDF\n";
    std::snprintf(line, sizeof(line),
                  "  max vertical discrepancy:   %.4f\n"
                  "  max horizontal discrepancy: %.4f Gbps\n",
                  report.ccdf_delta.max_vertical_prob,
                  report.ccdf_delta.max_horizontal * 1e-9);
    out << line;

    out << "\nViolations: ";
    if (report.violations.empty())
        out << "none\n";
    else
    {
        out << "\n";
        for (const auto &v : report.violations)
            out << "  - " << v << "\n";
    }
}

} // namespace plcsynth
