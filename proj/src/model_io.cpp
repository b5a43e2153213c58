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

#include "plcsynth/model_io.hpp"

#include <filesystem>
#include <fstream>

#include "io_util.hpp"
#include "plcsynth/estimation.hpp"

namespace fs = std::filesystem;

namespace plcsynth
{

namespace
{

// Sidecar layout: the blocks named in payload_layout, row-major, f64le.
void write_matrix(std::ofstream &out, const arma::mat &m)
{
    std::vector<double> row(m.n_cols);
    for (arma::uword r = 0; r < m.n_rows; ++r)
    {
        for (arma::uword c = 0; c < m.n_cols; ++c)
            row[c] = m(r, c);
        detail::write_doubles(out, row.data(), row.size());
    }
}

arma::mat read_matrix(std::ifstream &in, std::size_t rows, std::size_t cols,
                      const std::string &path)
{
    arma::mat m(rows, cols);
    std::vector<double> row(cols);
    for (std::size_t r = 0; r < rows; ++r)
    {
        detail::read_doubles(in, row.data(), cols, path);
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = row[c];
    }
    return m;
}

nlohmann::json layout_block(const char *name, std::size_t rows,
                            std::size_t cols)
{
    return nlohmann::json{{"name", name}, {"rows", rows}, {"cols", cols}};
}

nlohmann::json fit_meta_to_json(const FitMeta &meta)
{
    return nlohmann::json{{"source_n_meas", meta.source_n_meas},
                          {"created_utc", meta.created_utc},
                          {"format_version", meta.format_version},
                          {"decimation", meta.decimation}};
}

FitMeta fit_meta_from_json(const nlohmann::json &j)
{
    FitMeta meta;
    meta.source_n_meas = j.value("source_n_meas", std::size_t{0});
    meta.created_utc = j.value("created_utc", std::string{});
    meta.format_version = j.value("format_version", 1);
    meta.decimation = j.value("decimation", std::size_t{1});
    return meta;
}

nlohmann::json read_envelope(const std::string &json_path)
{
    std::ifstream in(json_path);
    if (!in)
        raise(ErrorCode::io_error, "cannot open model: " + json_path);
    nlohmann::json j;
    try
    {
        in >> j;
    }
    catch (const nlohmann::json::exception &e)
    {
        raise(ErrorCode::bad_format,
              "invalid model JSON in " + json_path + ": " + e.what());
    }
    if (j.value("format_version", 0) != 1)
        raise(ErrorCode::bad_format,
              "unsupported model format_version: " + json_path);
    if (j.value("dtype", "") != "f64le")
        raise(ErrorCode::bad_format,
              "unsupported model dtype: " + json_path);
    return j;
}

FrequencyGrid grid_from_json(const nlohmann::json &j,
                             const std::string &json_path)
{
    if (!j.contains("f_start_hz") || !j.contains("f_end_hz") ||
        !j.contains("m_samples"))
        raise(ErrorCode::bad_format, "model grid missing: " + json_path);
    return make_grid(j["f_start_hz"].get<double>(),
                     j["f_end_hz"].get<double>(),
                     j["m_samples"].get<std::size_t>());
}

std::ifstream open_payload(const nlohmann::json &j,
                           const std::string &json_path, fs::path &out_path)
{
    if (!j.contains("payload"))
        raise(ErrorCode::bad_format,
              "model missing payload reference: " + json_path);
    out_path = fs::path(json_path).parent_path() /
               j["payload"].get<std::string>();
    std::ifstream in(out_path, std::ios::binary);
    if (!in)
        raise(ErrorCode::io_error,
              "cannot open model payload: " + out_path.string());
    return in;
}

// Rebuilds the derived fields of a Gaussian parameter block from the
// stored mean and covariance.
GaussianFieldParams gaussian_from_parts(arma::vec mean, arma::mat cov)
{
    GaussianFieldParams params;
    params.grid_len = mean.n_elem;
    params.norm_cov = normalize_covariance(cov);
    params.mean = std::move(mean);
    params.cov = std::move(cov);
    return params;
}

} // namespace

void save_model(const SisoChannelModel &model, const std::string &json_path,
                const nlohmann::json &provenance)
{
    const fs::path payload = detail::payload_path_for(json_path);
    const std::size_t m = model.grid.m_samples;
    nlohmann::json j = {
        {"format_version", 1},
        {"kind", "siso_model"},
        {"f_start_hz", model.grid.f_start_hz},
        {"f_end_hz", model.grid.f_end_hz},
        {"m_samples", m},
        {"n_rx", 1},
        {"n_tx", 1},
        {"fit_meta", fit_meta_to_json(model.fit_meta)},
        {"dtype", "f64le"},
        {"payload", payload.filename().string()},
        {"payload_layout",
         {layout_block("amp_mean", m, 1), layout_block("amp_cov", m, m),
          layout_block("phase_norm_cov", m, m)}},
    };
    if (!provenance.is_null())
        j["provenance"] = provenance;

    std::ofstream out_json(json_path);
    if (!out_json)
        raise(ErrorCode::io_error, "cannot write model: " + json_path);
    out_json << j.dump(2) << "\n";

    std::ofstream out(payload, std::ios::binary);
    if (!out)
        raise(ErrorCode::io_error,
              "cannot write model payload: " + payload.string());
    write_matrix(out, arma::mat(model.amp.mean));
    write_matrix(out, model.amp.cov);
    write_matrix(out, model.phase_cov.norm_cov);
}

void save_model(const MimoChannelModel &model, const std::string &json_path,
                const nlohmann::json &provenance)
{
    const fs::path payload = detail::payload_path_for(json_path);
    const std::size_t d = model.n_rx * model.n_tx * model.grid.m_samples;
    const bool empirical = model.slope_dist.sampling_mode ==
                           SlopeDistribution::SamplingMode::empirical;
    nlohmann::json j = {
        {"format_version", 1},
        {"kind", "mimo_model"},
        {"f_start_hz", model.grid.f_start_hz},
        {"f_end_hz", model.grid.f_end_hz},
        {"m_samples", model.grid.m_samples},
        {"n_rx", model.n_rx},
        {"n_tx", model.n_tx},
        {"sampling_mode", empirical ? "empirical" : "gaussian"},
        {"slope_summary",
         {{"mean", model.slope_dist.mean}, {"std", model.slope_dist.stddev}}},
        {"fit_meta", fit_meta_to_json(model.fit_meta)},
        {"dtype", "f64le"},
        {"payload", payload.filename().string()},
        {"payload_layout",
         {layout_block("amp_mean", d, 1), layout_block("amp_cov", d, d)}},
        {"rx_modes", model.rx_mode_names},
        {"tx_modes", model.tx_mode_names},
    };
    if (empirical)
        j["slope_samples"] = std::vector<double>(
            model.slope_dist.samples.begin(), model.slope_dist.samples.end());
    if (!provenance.is_null())
        j["provenance"] = provenance;

    std::ofstream out_json(json_path);
    if (!out_json)
        raise(ErrorCode::io_error, "cannot write model: " + json_path);
    out_json << j.dump(2) << "\n";

    std::ofstream out(payload, std::ios::binary);
    if (!out)
        raise(ErrorCode::io_error,
              "cannot write model payload: " + payload.string());
    write_matrix(out, arma::mat(model.amp_joint.mean));
    write_matrix(out, model.amp_joint.cov);
}

ModelKind peek_model_kind(const std::string &json_path)
{
    const nlohmann::json j = read_envelope(json_path);
    const std::string kind = j.value("kind", "");
    if (kind == "siso_model")
        return ModelKind::siso;
    if (kind == "mimo_model")
        return ModelKind::mimo;
    raise(ErrorCode::bad_format,
          "unknown model kind '" + kind + "': " + json_path);
}

SisoChannelModel load_siso_model(const std::string &json_path)
{
    const nlohmann::json j = read_envelope(json_path);
    if (j.value("kind", "") != "siso_model")
        raise(ErrorCode::bad_format, "expected a SISO model: " + json_path);
    SisoChannelModel model;
    model.grid = grid_from_json(j, json_path);
    const std::size_t m = model.grid.m_samples;

    fs::path payload;
    std::ifstream in = open_payload(j, json_path, payload);
    arma::vec mean = read_matrix(in, m, 1, payload.string()).col(0);
    arma::mat cov = read_matrix(in, m, m, payload.string());
    model.amp = gaussian_from_parts(std::move(mean), std::move(cov));
    model.phase_cov.norm_cov = read_matrix(in, m, m, payload.string());
    if (j.contains("fit_meta"))
        model.fit_meta = fit_meta_from_json(j["fit_meta"]);
    return model;
}

MimoChannelModel load_mimo_model(const std::string &json_path)
{
    const nlohmann::json j = read_envelope(json_path);
    if (j.value("kind", "") != "mimo_model")
        raise(ErrorCode::bad_format, "expected a MIMO model: " + json_path);
    MimoChannelModel model;
    model.grid = grid_from_json(j, json_path);
    if (!j.contains("n_rx") || !j.contains("n_tx"))
        raise(ErrorCode::bad_format,
              "MIMO model missing mode counts: " + json_path);
    model.n_rx = j["n_rx"].get<std::size_t>();
    model.n_tx = j["n_tx"].get<std::size_t>();
    const std::size_t d = model.n_rx * model.n_tx * model.grid.m_samples;

    fs::path payload;
    std::ifstream in = open_payload(j, json_path, payload);
    arma::vec mean = read_matrix(in, d, 1, payload.string()).col(0);
    arma::mat cov = read_matrix(in, d, d, payload.string());
    model.amp_joint = gaussian_from_parts(std::move(mean), std::move(cov));

    const std::string mode = j.value("sampling_mode", "empirical");
    if (mode == "empirical")
    {
        if (!j.contains("slope_samples"))
            raise(ErrorCode::bad_format,
                  "empirical sampling mode needs slope_samples: " +
                      json_path);
        const auto samples = j["slope_samples"].get<std::vector<double>>();
        if (samples.empty())
            raise(ErrorCode::empty_slope_samples,
                  "slope_samples is empty: " + json_path);
        model.slope_dist.samples = arma::vec(samples);
        model.slope_dist.sampling_mode =
            SlopeDistribution::SamplingMode::empirical;
    }
    else if (mode == "gaussian")
    {
        model.slope_dist.sampling_mode =
            SlopeDistribution::SamplingMode::gaussian;
    }
    else
        raise(ErrorCode::bad_format,
              "unknown sampling_mode '" + mode + "': " + json_path);

    if (j.contains("slope_summary"))
    {
        model.slope_dist.mean = j["slope_summary"].value("mean", 0.0);
        model.slope_dist.stddev = j["slope_summary"].value("std", 0.0);
    }
    else if (model.slope_dist.samples.n_elem > 0)
    {
        model.slope_dist.mean = arma::mean(model.slope_dist.samples);
        model.slope_dist.stddev =
            model.slope_dist.samples.n_elem > 1
                ? arma::stddev(model.slope_dist.samples)
                : 0.0;
    }
    else
        raise(ErrorCode::bad_format,
              "gaussian sampling mode needs slope_summary: " + json_path);

    if (j.contains("fit_meta"))
        model.fit_meta = fit_meta_from_json(j["fit_meta"]);
    if (j.contains("rx_modes"))
        model.rx_mode_names = j["rx_modes"].get<std::vector<std::string>>();
    if (j.contains("tx_modes"))
        model.tx_mode_names = j["tx_modes"].get<std::vector<std::string>>();
    return model;
}

} // namespace plcsynth
