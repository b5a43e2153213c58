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
// Command-line front end: ingest -> fit -> generate -> metrics -> validate.
//
// Exit codes: 0 success, 1 usage/parse error, 2 I/O error, 3 file format
// error, 4 data/estimation error, 5 numerical error, 6 threshold
// violation.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "plcsynth/ensemble_io.hpp"
#include "plcsynth/fixtures.hpp"
#include "plcsynth/generator.hpp"
#include "plcsynth/metrics_io.hpp"
#include "plcsynth/model_io.hpp"
#include "plcsynth/validation.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace
{

int exit_code_for(plcsynth::ErrorCode code)
{
    using plcsynth::ErrorCode;
    switch (code)
    {
    case ErrorCode::usage_error:
        return 1;
    case ErrorCode::io_error:
        return 2;
    case ErrorCode::bad_format:
        return 3;
    case ErrorCode::zero_entry:
    case ErrorCode::non_finite_input:
    case ErrorCode::dimension_mismatch:
    case ErrorCode::shape_mismatch:
    case ErrorCode::too_few_realizations:
    case ErrorCode::empty_slope_samples:
    case ErrorCode::empty_input:
    case ErrorCode::degenerate_grid:
        return 4;
    case ErrorCode::not_symmetric:
    case ErrorCode::indefinite_matrix:
    case ErrorCode::singular_noise:
    case ErrorCode::grid_mismatch:
        return 5;
    }
    return 4;
}

struct FitOptions
{
    std::string input;
    std::string output;
    std::size_t decimate = 1;
    std::string slope_mode = "empirical";
    double f_start_hz = 0.0;
    double f_end_hz = 0.0;
};

struct GenerateOptions
{
    std::string model;
    std::string output;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    int threads = 1;
};

struct MetricsOptions
{
    std::string input;
    std::string output = "metrics";
    std::string tx_path;
    std::string noise_path;
    int threads = 1;
};

struct ValidateOptions
{
    std::vector<std::string> inputs;
    std::string output = "report";
    std::string tx_path;
    std::string noise_path;
    std::string thresholds_path;
    int threads = 1;
};

struct DemoOptions
{
    std::string output_dir = ".";
};

bool is_csv(const std::string &path)
{
    return fs::path(path).extension() == ".csv";
}

plcsynth::TxSpec tx_or_default(const std::string &path)
{
    return path.empty() ? plcsynth::default_tx_spec()
                        : plcsynth::load_tx_spec(path);
}

plcsynth::NoiseModel noise_or_default(const std::string &path,
                                      std::size_t n_rx)
{
    return path.empty() ? plcsynth::default_noise_model(n_rx)
                        : plcsynth::load_noise_model(path);
}

int run_fit(const FitOptions &opt)
{
    json provenance = {{"command", "fit"},
                       {"input", opt.input},
                       {"decimate", opt.decimate},
                       {"slope_mode", opt.slope_mode}};

    const bool csv = is_csv(opt.input);
    plcsynth::EnsembleKind kind = csv
                                      ? plcsynth::EnsembleKind::siso
                                      : plcsynth::peek_ensemble_kind(opt.input);
    if (kind == plcsynth::EnsembleKind::siso)
    {
        plcsynth::ChannelEnsemble ens =
            csv ? plcsynth::import_csv(opt.input, opt.f_start_hz,
                                       opt.f_end_hz)
                : plcsynth::load_siso_ensemble(opt.input);
        if (opt.decimate > 1)
            ens = plcsynth::decimate(ens, opt.decimate);
        plcsynth::SisoChannelModel model = plcsynth::fit_siso(ens);
        model.fit_meta.decimation = opt.decimate;
        plcsynth::save_model(model, opt.output, provenance);
        std::cout << "fitted SISO model: n_meas=" << ens.n_meas()
                  << " m_samples=" << model.grid.m_samples << "\n";
    }
    else
    {
        plcsynth::MimoChannelEnsemble ens =
            plcsynth::load_mimo_ensemble(opt.input);
        if (opt.decimate > 1)
            ens = plcsynth::decimate(ens, opt.decimate);
        plcsynth::MimoChannelModel model = plcsynth::fit_mimo(ens);
        model.fit_meta.decimation = opt.decimate;
        if (opt.slope_mode == "gaussian")
            model.slope_dist.sampling_mode =
                plcsynth::SlopeDistribution::SamplingMode::gaussian;
        plcsynth::save_model(model, opt.output, provenance);
        std::cout << "fitted MIMO model: n_meas=" << ens.n_meas()
                  << " n_rx=" << model.n_rx << " n_tx=" << model.n_tx
                  << " m_samples=" << model.grid.m_samples
                  << " slope_mean=" << model.slope_dist.mean
                  << " rad/Hz slope_std=" << model.slope_dist.stddev
                  << " rad/Hz\n";
    }
    return 0;
}

int run_generate(const GenerateOptions &opt)
{
    if (opt.n < 1)
        plcsynth::raise(plcsynth::ErrorCode::usage_error,
                        "--n must be at least 1");
    // Thread count deliberately left out of the echo: outputs are
    // byte-identical for the same (model, n, seed).
    json provenance = {{"command", "generate"},
                       {"model", opt.model},
                       {"n", opt.n},
                       {"seed", opt.seed}};
    if (plcsynth::peek_model_kind(opt.model) == plcsynth::ModelKind::siso)
    {
        const plcsynth::SisoChannelModel model =
            plcsynth::load_siso_model(opt.model);
        const plcsynth::ChannelEnsemble ens =
            plcsynth::generate_siso(model, opt.n, opt.seed, opt.threads);
        plcsynth::save_ensemble(ens, opt.output, provenance);
    }
    else
    {
        const plcsynth::MimoChannelModel model =
            plcsynth::load_mimo_model(opt.model);
        const plcsynth::MimoChannelEnsemble ens =
            plcsynth::generate_mimo(model, opt.n, opt.seed, opt.threads);
        plcsynth::save_ensemble(ens, opt.output, provenance);
    }
    std::cout << "generated " << opt.n << " realizations -> " << opt.output
              << "\n";
    return 0;
}

int run_metrics(const MetricsOptions &opt)
{
    json provenance = {{"command", "metrics"},
                       {"input", opt.input},
                       {"tx", opt.tx_path},
                       {"noise", opt.noise_path}};
    const plcsynth::TxSpec tx = tx_or_default(opt.tx_path);
    plcsynth::MetricsReport report;
    if (plcsynth::peek_ensemble_kind(opt.input) ==
        plcsynth::EnsembleKind::siso)
    {
        const plcsynth::ChannelEnsemble ens =
            plcsynth::load_siso_ensemble(opt.input);
        report = plcsynth::compute_metrics(ens, tx,
                                           noise_or_default(opt.noise_path, 1));
    }
    else
    {
        if (opt.noise_path.empty())
            plcsynth::raise(plcsynth::ErrorCode::usage_error,
                            "MIMO metrics require --noise (correlated "
                            "noise model file)");
        const plcsynth::MimoChannelEnsemble ens =
            plcsynth::load_mimo_ensemble(opt.input);
        report = plcsynth::compute_metrics(
            ens, tx, plcsynth::load_noise_model(opt.noise_path));
    }
    plcsynth::write_metrics_report(report, opt.output + ".json",
                                   opt.output + ".csv", provenance);
    std::cout << "metrics: acg=" << report.avg_acg_db
              << " dB rms_ds=" << report.avg_rms_ds_s * 1e6
              << " us cb=" << report.avg_cb_hz * 1e-3
              << " kHz capacity=" << report.avg_capacity_bps * 1e-9
              << " Gbps\n";
    return 0;
}

int run_validate(const ValidateOptions &opt)
{
    const plcsynth::ValidationThresholds thresholds =
        opt.thresholds_path.empty()
            ? plcsynth::ValidationThresholds{}
            : plcsynth::load_thresholds(opt.thresholds_path);
    const plcsynth::TxSpec tx = tx_or_default(opt.tx_path);

    const std::string &ref_path = opt.inputs[0];
    const std::string &sim_path = opt.inputs[1];
    const auto kind = plcsynth::peek_ensemble_kind(ref_path);
    if (kind != plcsynth::peek_ensemble_kind(sim_path))
        plcsynth::raise(plcsynth::ErrorCode::grid_mismatch,
                        "cannot compare ensembles of different kinds");

    plcsynth::ValidationReport report;
    if (kind == plcsynth::EnsembleKind::siso)
    {
        const auto ref = plcsynth::load_siso_ensemble(ref_path);
        const auto sim = plcsynth::load_siso_ensemble(sim_path);
        report = plcsynth::validate_pair(
            ref, sim, tx, noise_or_default(opt.noise_path, 1), thresholds);
    }
    else
    {
        const auto ref = plcsynth::load_mimo_ensemble(ref_path);
        const auto sim = plcsynth::load_mimo_ensemble(sim_path);
        report = plcsynth::validate_pair(
            ref, sim, tx, noise_or_default(opt.noise_path, ref.n_rx),
            thresholds);
    }
    report.config_echo["reference"] = ref_path;
    report.config_echo["simulated"] = sim_path;
    report.config_echo["tx"] = opt.tx_path;
    report.config_echo["noise"] = opt.noise_path;
    plcsynth::write_validation_report(report, opt.output + ".json",
                                      opt.output + ".txt");

    if (!report.violations.empty())
    {
        std::cerr << "validation thresholds violated:\n";
        for (const auto &v : report.violations)
            std::cerr << "  - " << v << "\n";
        return 6;
    }
    std::cout << "validation passed -> " << opt.output << ".txt\n";
    return 0;
}

int run_demo(const DemoOptions &opt)
{
    fs::create_directories(opt.output_dir);
    const fs::path dir(opt.output_dir);
    plcsynth::save_ensemble(plcsynth::demo_siso_ensemble(),
                            (dir / "demo_siso.json").string(),
                            json{{"command", "demo"}});
    plcsynth::save_ensemble(plcsynth::demo_mimo_ensemble(),
                            (dir / "demo_mimo.json").string(),
                            json{{"command", "demo"}});
    std::cout << "wrote demo_siso.json and demo_mimo.json in "
              << opt.output_dir << "\n";
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Top-down statistical PLC channel modeling and synthesis"};
    app.require_subcommand(1);

    FitOptions fit_opt;
    auto *fit = app.add_subcommand(
        "fit", "Fit a channel model from a reference ensemble");
    fit->add_option("--input", fit_opt.input,
                    "Ensemble manifest (.json) or CSV fixture (.csv)")
        ->required();
    fit->add_option("--output", fit_opt.output, "Model file to write (.json)")
        ->required();
    fit->add_option("--decimate", fit_opt.decimate,
                    "Keep every k-th frequency sample (default 1 = all)");
    fit->add_option("--slope-mode", fit_opt.slope_mode,
                    "MIMO slope sampling: empirical|gaussian")
        ->check(CLI::IsMember({"empirical", "gaussian"}));
    fit->add_option("--f-start-hz", fit_opt.f_start_hz,
                    "Grid start frequency in Hz (CSV input only)");
    fit->add_option("--f-end-hz", fit_opt.f_end_hz,
                    "Grid end frequency in Hz (CSV input only)");

    GenerateOptions gen_opt;
    auto *gen = app.add_subcommand(
        "generate", "Synthesize realizations from a fitted model");
    gen->add_option("--model", gen_opt.model, "Model file (.json)")
        ->required();
    gen->add_option("--output", gen_opt.output,
                    "Ensemble manifest to write (.json)")
        ->required();
    gen->add_option("--n", gen_opt.n, "Number of realizations (>= 1)")
        ->required();
    gen->add_option("--seed", gen_opt.seed,
                    "Master seed, 64-bit unsigned (default 0)");
    gen->add_option("--threads", gen_opt.threads,
                    "Worker threads; output is independent of this");

    MetricsOptions met_opt;
    auto *met = app.add_subcommand(
        "metrics", "Compute ACG/RMS-DS/CB/capacity for an ensemble");
    met->add_option("--input", met_opt.input, "Ensemble manifest (.json)")
        ->required();
    met->add_option("--output", met_opt.output,
                    "Report basename; writes <basename>.json and .csv");
    met->add_option("--tx", met_opt.tx_path,
                    "Transmit PSD file in dBm/Hz (default flat -55)");
    met->add_option("--noise", met_opt.noise_path,
                    "Noise model file in dBm/Hz (required for MIMO input)");
    met->add_option("--threads", met_opt.threads, "Worker threads");

    ValidateOptions val_opt;
    auto *val = app.add_subcommand(
        "validate", "Compare two ensembles (reference first, then "
                    "simulated) and gate on thresholds");
    val->add_option("--input", val_opt.inputs,
                    "Two ensemble manifests: reference then simulated")
        ->expected(2)
        ->required();
    val->add_option("--output", val_opt.output,
                    "Report basename; writes <basename>.json and .txt");
    val->add_option("--tx", val_opt.tx_path,
                    "Transmit PSD file in dBm/Hz (default flat -55)");
    val->add_option("--noise", val_opt.noise_path,
                    "Noise model file in dBm/Hz (default white -110, "
                    "identity correlation)");
    val->add_option("--thresholds", val_opt.thresholds_path,
                    "Threshold config JSON (defaults otherwise)");
    val->add_option("--threads", val_opt.threads, "Worker threads");

    DemoOptions demo_opt;
    auto *demo = app.add_subcommand(
        "demo", "Write the bundled synthetic demo ensembles");
    demo->add_option("--output-dir", demo_opt.output_dir,
                     "Directory for demo_siso.json / demo_mimo.json");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (fit->parsed())
        {
            if (is_csv(fit_opt.input) &&
                !(fit_opt.f_start_hz > 0.0 &&
                  fit_opt.f_end_hz > fit_opt.f_start_hz))
                plcsynth::raise(plcsynth::ErrorCode::usage_error,
                                "CSV input requires --f-start-hz and "
                                "--f-end-hz");
            return run_fit(fit_opt);
        }
        if (gen->parsed())
            return run_generate(gen_opt);
        if (met->parsed())
            return run_metrics(met_opt);
        if (val->parsed())
            return run_validate(val_opt);
        if (demo->parsed())
            return run_demo(demo_opt);
    }
    catch (const plcsynth::Error &e)
    {
        std::cerr << "error (" << plcsynth::error_code_name(e.code())
                  << "): " << e.what() << "\n";
        return exit_code_for(e.code());
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 1;
}
