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

#include "plcsynth/fixtures.hpp"

#include <complex>

#include "plcsynth/mathutil.hpp"
#include "plcsynth/rng.hpp"

namespace plcsynth
{

namespace
{

constexpr std::size_t kPaths = 4;
constexpr double kMaxDelay_s = 0.4e-6;
constexpr double kGainScale = 0.01; // puts ACG near -40 dB

struct PathSet
{
    double delay_s[kPaths];
    double atten_per_hz[kPaths];
};

PathSet draw_paths(rng::Stream &stream)
{
    PathSet p{};
    for (std::size_t i = 0; i < kPaths; ++i)
    {
        p.delay_s[i] = kMaxDelay_s * stream.uniform();
        p.atten_per_hz[i] = (1.0 + 3.0 * stream.uniform()) * 1e-9;
    }
    return p;
}

std::complex<double> complex_gain(rng::Stream &stream)
{
    return {stream.normal(), stream.normal()};
}

arma::cx_vec multipath_response(const PathSet &paths,
                                const std::complex<double> *gains,
                                const arma::vec &freqs)
{
    arma::cx_vec h(freqs.n_elem, arma::fill::zeros);
    for (std::size_t p = 0; p < kPaths; ++p)
        for (arma::uword k = 0; k < freqs.n_elem; ++k)
        {
            const double f = freqs(k);
            const double mag = std::exp(-paths.atten_per_hz[p] * f);
            h(k) += gains[p] * mag *
                    std::polar(1.0, -kTwoPi * f * paths.delay_s[p]);
        }
    return h * kGainScale;
}

} // namespace

ChannelEnsemble demo_siso_ensemble(std::uint64_t seed, std::size_t n_meas,
                                   std::size_t m_samples)
{
    const FrequencyGrid grid = make_grid(1.8e6, 100e6, m_samples);
    const arma::vec freqs = grid.frequencies();
    const std::uint64_t master = rng::derive_seed(seed, rng::kStreamFixture);

    arma::cx_mat data(n_meas, m_samples);
    for (std::size_t r = 0; r < n_meas; ++r)
    {
        rng::Stream stream(master, r);
        const PathSet paths = draw_paths(stream);
        std::complex<double> gains[kPaths];
        for (auto &g : gains)
            g = complex_gain(stream);
        data.row(r) = multipath_response(paths, gains, freqs).st();
    }
    return make_ensemble(grid, std::move(data));
}

MimoChannelEnsemble demo_mimo_ensemble(std::uint64_t seed,
                                       std::size_t n_meas, std::size_t n_rx,
                                       std::size_t n_tx,
                                       std::size_t m_samples)
{
    const FrequencyGrid grid = make_grid(1.8e6, 100e6, m_samples);
    const arma::vec freqs = grid.frequencies();
    const std::uint64_t master = rng::derive_seed(seed, rng::kStreamFixture);
    const std::size_t n_modes = n_rx * n_tx;

    arma::cx_mat data(n_meas, n_modes * m_samples);
    for (std::size_t r = 0; r < n_meas; ++r)
    {
        rng::Stream stream(master, r);
        // Delays and attenuations are shared by all mode pairs of a
        // realization; gains mix a shared component with a per-mode one,
        // which is what produces the spatial correlation.
        const PathSet paths = draw_paths(stream);
        std::complex<double> shared[kPaths];
        for (auto &g : shared)
            g = complex_gain(stream);
        for (std::size_t mode = 0; mode < n_modes; ++mode)
        {
            std::complex<double> gains[kPaths];
            for (std::size_t p = 0; p < kPaths; ++p)
                gains[p] = 0.8 * shared[p] + 0.45 * complex_gain(stream);
            const arma::cx_vec h = multipath_response(paths, gains, freqs);
            for (std::size_t k = 0; k < m_samples; ++k)
                data(r, mode * m_samples + k) = h(k);
        }
    }

    std::vector<std::string> rx_names = {"P", "N", "CM"};
    std::vector<std::string> tx_names = {"D1", "D2", "D3"};
    rx_names.resize(n_rx, "RX");
    tx_names.resize(n_tx, "TX");
    return make_mimo_ensemble(grid, n_rx, n_tx, std::move(data),
                              std::move(rx_names), std::move(tx_names));
}

} // namespace plcsynth
