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

#include "plcsynth/ensemble_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "io_util.hpp"

namespace fs = std::filesystem;

namespace plcsynth
{

namespace
{

// Payload rows are written realization-major: for each realization the
// (rx, tx, freq) entries in flat column order, each as (re, im) float64.
void write_payload(const arma::cx_mat &data, const fs::path &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        raise(ErrorCode::io_error, "cannot write payload: " + path.string());
    std::vector<double> row(2 * data.n_cols);
    for (arma::uword r = 0; r < data.n_rows; ++r)
    {
        for (arma::uword c = 0; c < data.n_cols; ++c)
        {
            row[2 * c] = data(r, c).real();
            row[2 * c + 1] = data(r, c).imag();
        }
        detail::write_doubles(out, row.data(), row.size());
    }
    if (!out)
        raise(ErrorCode::io_error, "short write: " + path.string());
}

arma::cx_mat read_payload(const fs::path &path, std::size_t n_rows,
                          std::size_t n_cols)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        raise(ErrorCode::io_error, "cannot open payload: " + path.string());
    const auto expected_bytes =
        static_cast<std::uintmax_t>(n_rows) * n_cols * 2 * sizeof(double);
    std::error_code ec;
    const auto actual = fs::file_size(path, ec);
    if (!ec && actual != expected_bytes)
        raise(ErrorCode::bad_format,
              "payload size " + std::to_string(actual) + " != expected " +
                  std::to_string(expected_bytes) + ": " + path.string());
    arma::cx_mat data(n_rows, n_cols);
    std::vector<double> row(2 * n_cols);
    for (std::size_t r = 0; r < n_rows; ++r)
    {
        detail::read_doubles(in, row.data(), row.size(), path.string());
        for (std::size_t c = 0; c < n_cols; ++c)
            data(r, c) = {row[2 * c], row[2 * c + 1]};
    }
    return data;
}

nlohmann::json read_manifest(const std::string &json_path)
{
    std::ifstream in(json_path);
    if (!in)
        raise(ErrorCode::io_error, "cannot open manifest: " + json_path);
    nlohmann::json j;
    try
    {
        in >> j;
    }
    catch (const nlohmann::json::exception &e)
    {
        raise(ErrorCode::bad_format,
              "invalid manifest JSON in " + json_path + ": " + e.what());
    }
    return j;
}

template <typename T>
T manifest_field(const nlohmann::json &j, const char *key,
                 const std::string &json_path)
{
    if (!j.contains(key))
        raise(ErrorCode::bad_format,
              std::string("manifest missing field '") + key + "': " +
                  json_path);
    try
    {
        return j[key].get<T>();
    }
    catch (const nlohmann::json::exception &)
    {
        raise(ErrorCode::bad_format,
              std::string("manifest field '") + key + "' has wrong type: " +
                  json_path);
    }
}

fs::path resolve_payload(const nlohmann::json &j,
                         const std::string &json_path)
{
    const auto rel = manifest_field<std::string>(j, "payload", json_path);
    return fs::path(json_path).parent_path() / rel;
}

void check_manifest_common(const nlohmann::json &j,
                           const std::string &json_path)
{
    if (manifest_field<int>(j, "format_version", json_path) != 1)
        raise(ErrorCode::bad_format,
              "unsupported format_version: " + json_path);
    if (manifest_field<std::string>(j, "dtype", json_path) != "c128le")
        raise(ErrorCode::bad_format, "unsupported dtype: " + json_path);
}

void write_manifest(const nlohmann::json &j, const std::string &json_path)
{
    std::ofstream out(json_path);
    if (!out)
        raise(ErrorCode::io_error, "cannot write manifest: " + json_path);
    out << j.dump(2) << "\n";
}

} // namespace

void save_ensemble(const ChannelEnsemble &ens, const std::string &json_path,
                   const nlohmann::json &provenance)
{
    const fs::path payload = detail::payload_path_for(json_path);
    nlohmann::json j = {
        {"format_version", 1},
        {"kind", "siso"},
        {"n_meas", ens.n_meas()},
        {"n_rx", 1},
        {"n_tx", 1},
        {"m_samples", ens.grid.m_samples},
        {"f_start_hz", ens.grid.f_start_hz},
        {"f_end_hz", ens.grid.f_end_hz},
        {"dtype", "c128le"},
        {"payload", payload.filename().string()},
        {"rx_modes", nlohmann::json::array()},
        {"tx_modes", nlohmann::json::array()},
    };
    if (!ens.labels.empty())
        j["labels"] = ens.labels;
    if (!provenance.is_null())
        j["provenance"] = provenance;
    write_manifest(j, json_path);
    write_payload(ens.data, payload);
}

void save_ensemble(const MimoChannelEnsemble &ens,
                   const std::string &json_path,
                   const nlohmann::json &provenance)
{
    const fs::path payload = detail::payload_path_for(json_path);
    nlohmann::json j = {
        {"format_version", 1},
        {"kind", "mimo"},
        {"n_meas", ens.n_meas()},
        {"n_rx", ens.n_rx},
        {"n_tx", ens.n_tx},
        {"m_samples", ens.grid.m_samples},
        {"f_start_hz", ens.grid.f_start_hz},
        {"f_end_hz", ens.grid.f_end_hz},
        {"dtype", "c128le"},
        {"payload", payload.filename().string()},
        {"rx_modes", ens.rx_mode_names},
        {"tx_modes", ens.tx_mode_names},
    };
    if (!provenance.is_null())
        j["provenance"] = provenance;
    write_manifest(j, json_path);
    write_payload(ens.data, payload);
}

EnsembleKind peek_ensemble_kind(const std::string &json_path)
{
    const nlohmann::json j = read_manifest(json_path);
    const auto kind = manifest_field<std::string>(j, "kind", json_path);
    if (kind == "siso")
        return EnsembleKind::siso;
    if (kind == "mimo")
        return EnsembleKind::mimo;
    raise(ErrorCode::bad_format,
          "unknown ensemble kind '" + kind + "': " + json_path);
}

ChannelEnsemble load_siso_ensemble(const std::string &json_path)
{
    const nlohmann::json j = read_manifest(json_path);
    check_manifest_common(j, json_path);
    if (manifest_field<std::string>(j, "kind", json_path) != "siso")
        raise(ErrorCode::bad_format,
              "expected a SISO ensemble: " + json_path);
    const auto n_meas = manifest_field<std::size_t>(j, "n_meas", json_path);
    const auto m = manifest_field<std::size_t>(j, "m_samples", json_path);
    const FrequencyGrid grid =
        make_grid(manifest_field<double>(j, "f_start_hz", json_path),
                  manifest_field<double>(j, "f_end_hz", json_path), m);
    arma::cx_mat data = read_payload(resolve_payload(j, json_path), n_meas, m);
    std::vector<std::string> labels;
    if (j.contains("labels"))
        labels = j["labels"].get<std::vector<std::string>>();
    return make_ensemble(grid, std::move(data), std::move(labels));
}

MimoChannelEnsemble load_mimo_ensemble(const std::string &json_path)
{
    const nlohmann::json j = read_manifest(json_path);
    check_manifest_common(j, json_path);
    if (manifest_field<std::string>(j, "kind", json_path) != "mimo")
        raise(ErrorCode::bad_format,
              "expected a MIMO ensemble: " + json_path);
    const auto n_meas = manifest_field<std::size_t>(j, "n_meas", json_path);
    const auto n_rx = manifest_field<std::size_t>(j, "n_rx", json_path);
    const auto n_tx = manifest_field<std::size_t>(j, "n_tx", json_path);
    const auto m = manifest_field<std::size_t>(j, "m_samples", json_path);
    const FrequencyGrid grid =
        make_grid(manifest_field<double>(j, "f_start_hz", json_path),
                  manifest_field<double>(j, "f_end_hz", json_path), m);
    arma::cx_mat data =
        read_payload(resolve_payload(j, json_path), n_meas, n_rx * n_tx * m);
    std::vector<std::string> rx_modes;
    std::vector<std::string> tx_modes;
    if (j.contains("rx_modes"))
        rx_modes = j["rx_modes"].get<std::vector<std::string>>();
    if (j.contains("tx_modes"))
        tx_modes = j["tx_modes"].get<std::vector<std::string>>();
    return make_mimo_ensemble(grid, n_rx, n_tx, std::move(data),
                              std::move(rx_modes), std::move(tx_modes));
}

ChannelEnsemble import_csv(const std::string &csv_path, double f_start_hz,
                           double f_end_hz)
{
    std::ifstream in(csv_path);
    if (!in)
        raise(ErrorCode::io_error, "cannot open CSV: " + csv_path);
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        if (line.empty() || line[0] == '#')
            continue;
        std::vector<double> values;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
        {
            try
            {
                values.push_back(std::stod(cell));
            }
            catch (const std::exception &)
            {
                raise(ErrorCode::bad_format,
                      "CSV line " + std::to_string(line_no) +
                          ": cannot parse '" + cell + "'");
            }
        }
        if (values.size() % 2 != 0)
            raise(ErrorCode::bad_format,
                  "CSV line " + std::to_string(line_no) +
                      " must hold alternating re/im pairs");
        if (!rows.empty() && values.size() != rows[0].size())
            raise(ErrorCode::bad_format,
                  "CSV line " + std::to_string(line_no) + " has " +
                      std::to_string(values.size()) + " values, expected " +
                      std::to_string(rows[0].size()));
        rows.push_back(std::move(values));
    }
    if (rows.empty())
        raise(ErrorCode::empty_input, "CSV has no data rows: " + csv_path);
    const std::size_t m = rows[0].size() / 2;
    const FrequencyGrid grid = make_grid(f_start_hz, f_end_hz, m);
    arma::cx_mat data(rows.size(), m);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < m; ++c)
            data(r, c) = {rows[r][2 * c], rows[r][2 * c + 1]};
    return make_ensemble(grid, std::move(data));
}

} // namespace plcsynth
