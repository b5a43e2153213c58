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
// Seedable, splittable random streams.
//
// Every consumer of randomness in this library receives a Stream addressed
// by (master_seed, stream_id). Realization r always draws from the stream
// derived for r, so generated ensembles are bit-identical regardless of how
// many worker threads are used and regardless of which subset of
// realizations is produced.
//
// The stream generator is std::mt19937_64, whose state transition and
// output are fully specified by the C++ standard; together with the pinned
// double mappings below (uniforms via ((x >> 11) + 0.5) * 2^-53, normals
// via Box-Muller) the produced values are reproducible across platforms.
// Substream seeds are derived with splitmix64 applied to master and stream
// id in turn.

#pragma once

#include <cstdint>
#include <random>

#include "plcsynth/mathutil.hpp"

namespace plcsynth::rng
{

inline std::uint64_t splitmix64_next(std::uint64_t &state)
{
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Derives an independent substream seed from (master, stream).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream)
{
    std::uint64_t state = master;
    std::uint64_t mixed = splitmix64_next(state);
    state = mixed ^ (stream + 0x9E3779B97F4A7C15ULL);
    return splitmix64_next(state);
}

// Stream tags keep independent random components (e.g. amplitudes vs
// phases of the same realization) on disjoint substreams.
inline constexpr std::uint64_t kStreamAmplitude = 0x616D70; // "amp"
inline constexpr std::uint64_t kStreamPhase = 0x706873;     // "phs"
inline constexpr std::uint64_t kStreamFixture = 0x666978;   // "fix"

class Stream
{
  public:
    explicit Stream(std::uint64_t seed) : gen_(seed) {}

    Stream(std::uint64_t master, std::uint64_t stream_id)
        : gen_(derive_seed(master, stream_id))
    {
    }

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform on the open interval (0, 1); never returns 0 or 1.
    double uniform()
    {
        return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform on (-pi, pi).
    double uniform_angle() { return kPi * (2.0 * uniform() - 1.0); }

    /// Standard normal via Box-Muller; pairs are cached.
    double normal()
    {
        if (has_spare_)
        {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = kTwoPi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    /// Uniform index in [0, bound) without modulo bias.
    std::uint64_t uniform_index(std::uint64_t bound)
    {
        const std::uint64_t threshold = (-bound) % bound;
        for (;;)
        {
            const std::uint64_t x = gen_();
            if (x >= threshold)
                return x % bound;
        }
    }

  private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace plcsynth::rng
