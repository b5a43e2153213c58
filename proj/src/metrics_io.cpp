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

#include "plcsynth/metrics_io.hpp"

#include <fstream>

namespace plcsynth
{

namespace
{

nlohmann::json read_json(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        raise(ErrorCode::io_error, "cannot open: " + path);
    nlohmann::json j;
    try
    {
        in >> j;
    }
    catch (const nlohmann::json::exception &e)
    {
        raise(ErrorCode::bad_format,
              "invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

arma::mat matrix_from_json(const nlohmann::json &j, const std::string &path,
                           const char *key)
{
    const auto rows = j.get<std::vector<std::vector<double>>>();
    if (rows.empty())
        raise(ErrorCode::bad_format,
              std::string(key) + " must be a non-empty matrix: " + path);
    arma::mat m(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r)
    {
        if (rows[r].size() != rows[0].size())
            raise(ErrorCode::bad_format,
                  std::string(key) + " rows are ragged: " + path);
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            m(r, c) = rows[r][c];
    }
    return m;
}

void check_correlation(const arma::mat &c, const std::string &path)
{
    if (c.n_rows != c.n_cols)
        raise(ErrorCode::bad_format,
              "rx_correlation must be square: " + path);
    if (arma::abs(c - c.t()).max() > 1e-10)
        raise(ErrorCode::bad_format,
              "rx_correlation must be symmetric: " + path);
    for (arma::uword i = 0; i < c.n_rows; ++i)
        if (std::abs(c(i, i) - 1.0) > 1e-10)
            raise(ErrorCode::bad_format,
                  "rx_correlation diagonal must be 1: " + path);
}

} // namespace

NoiseModel load_noise_model(const std::string &json_path)
{
    const nlohmann::json j = read_json(json_path);
    NoiseModel noise;
    const std::string kind = j.value("kind", "white");

    if (!j.contains("rx_correlation"))
        raise(ErrorCode::bad_format,
              "noise model missing rx_correlation: " + json_path);
    noise.rx_correlation =
        matrix_from_json(j["rx_correlation"], json_path, "rx_correlation");
    check_correlation(noise.rx_correlation, json_path);

    if (kind == "white")
    {
        noise.white = true;
        if (!j.contains("psd_dbm_per_hz") ||
            !j["psd_dbm_per_hz"].is_number())
            raise(ErrorCode::bad_format,
                  "white noise needs a scalar psd_dbm_per_hz: " + json_path);
        noise.white_psd_dbm_per_hz = j["psd_dbm_per_hz"].get<double>();
    }
    else if (kind == "per_frequency")
    {
        noise.white = false;
        if (!j.contains("f_start_hz") || !j.contains("f_end_hz") ||
            !j.contains("m_samples"))
            raise(ErrorCode::bad_format,
                  "per-frequency noise needs a grid: " + json_path);
        noise.grid = make_grid(j["f_start_hz"].get<double>(),
                               j["f_end_hz"].get<double>(),
                               j["m_samples"].get<std::size_t>());
        noise.psd_dbm_per_hz = matrix_from_json(j["psd_dbm_per_hz"],
                                                json_path, "psd_dbm_per_hz");
        if (noise.psd_dbm_per_hz.n_rows != noise.rx_correlation.n_rows)
            raise(ErrorCode::bad_format,
                  "psd rows must match rx_correlation dimension: " +
                      json_path);
        if (noise.psd_dbm_per_hz.n_cols != noise.grid.m_samples)
            raise(ErrorCode::bad_format,
                  "psd columns must match m_samples: " + json_path);
    }
    else
        raise(ErrorCode::bad_format,
              "unknown noise kind '" + kind + "': " + json_path);

    if (!noise.rx_correlation.is_finite() ||
        (!noise.white && !noise.psd_dbm_per_hz.is_finite()))
        raise(ErrorCode::non_finite_input,
              "noise model has non-finite entries: " + json_path);
    return noise;
}

TxSpec load_tx_spec(const std::string &json_path)
{
    const nlohmann::json j = read_json(json_path);
    TxSpec tx;
    if (!j.contains("psd_dbm_per_hz"))
        raise(ErrorCode::bad_format,
              "tx spec missing psd_dbm_per_hz: " + json_path);
    if (j["psd_dbm_per_hz"].is_number())
    {
        tx.flat = true;
        tx.flat_psd_dbm_per_hz = j["psd_dbm_per_hz"].get<double>();
    }
    else
    {
        tx.flat = false;
        const auto mask = j["psd_dbm_per_hz"].get<std::vector<double>>();
        if (!j.contains("f_start_hz") || !j.contains("f_end_hz") ||
            !j.contains("m_samples"))
            raise(ErrorCode::bad_format,
                  "per-frequency tx mask needs a grid: " + json_path);
        tx.grid = make_grid(j["f_start_hz"].get<double>(),
                            j["f_end_hz"].get<double>(),
                            j["m_samples"].get<std::size_t>());
        if (mask.size() != tx.grid.m_samples)
            raise(ErrorCode::bad_format,
                  "tx mask length must match m_samples: " + json_path);
        tx.psd_dbm_per_hz = arma::vec(mask);
    }
    if (!tx.flat && !tx.psd_dbm_per_hz.is_finite())
        raise(ErrorCode::non_finite_input,
              "tx mask has non-finite entries: " + json_path);
    return tx;
}

void write_metrics_report(const MetricsReport &report,
                          const std::string &json_path,
                          const std::string &csv_path,
                          const nlohmann::json &provenance)
{
    nlohmann::json j = {
        {"averages",
         {{"acg_db", report.avg_acg_db},
          {"rms_ds_s", report.avg_rms_ds_s},
          {"cb_hz", report.avg_cb_hz},
          {"capacity_bps", report.avg_capacity_bps}}},
        {"per_realization",
         {{"acg_db",
           std::vector<double>(report.acg_db.begin(), report.acg_db.end())},
          {"rms_ds_s", std::vector<double>(report.rms_ds_s.begin(),
                                           report.rms_ds_s.end())},
          {"cb_hz",
           std::vector<double>(report.cb_hz.begin(), report.cb_hz.end())},
          {"capacity_bps", std::vector<double>(report.capacity_bps.begin(),
                                               report.capacity_bps.end())}}},
    };
    if (!provenance.is_null())
        j["provenance"] = provenance;

    std::ofstream out_json(json_path);
    if (!out_json)
        raise(ErrorCode::io_error, "cannot write " + json_path);
    out_json << j.dump(2) << "\n";

    std::ofstream out_csv(csv_path);
    if (!out_csv)
        raise(ErrorCode::io_error, "cannot write " + csv_path);
    out_csv << "realization,acg_db,rms_ds_s,cb_hz,capacity_bps\n";
    out_csv.precision(17);
    for (arma::uword r = 0; r < report.acg_db.n_elem; ++r)
        out_csv << r << ',' << report.acg_db(r) << ',' << report.rms_ds_s(r)
                << ',' << report.cb_hz(r) << ',' << report.capacity_bps(r)
                << "\n";
}

} // namespace plcsynth
