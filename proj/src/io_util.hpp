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
// Little-endian float64 payload helpers shared by the ensemble and model
// containers.

#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "plcsynth/error.hpp"

namespace plcsynth::detail
{

inline std::uint64_t byteswap_u64(std::uint64_t v)
{
    return __builtin_bswap64(v);
}

inline void doubles_to_le_bytes(const double *src, std::size_t count,
                                std::vector<char> &out)
{
    out.resize(count * sizeof(double));
    std::memcpy(out.data(), src, out.size());
    if constexpr (std::endian::native == std::endian::big)
    {
        auto *words = reinterpret_cast<std::uint64_t *>(out.data());
        for (std::size_t i = 0; i < count; ++i)
            words[i] = byteswap_u64(words[i]);
    }
}

inline void le_bytes_to_doubles(const char *src, std::size_t count,
                                double *out)
{
    std::memcpy(out, src, count * sizeof(double));
    if constexpr (std::endian::native == std::endian::big)
    {
        auto *words = reinterpret_cast<std::uint64_t *>(out);
        for (std::size_t i = 0; i < count; ++i)
            words[i] = byteswap_u64(words[i]);
    }
}

/// Streams `count` doubles to `out` as little-endian float64.
inline void write_doubles(std::ofstream &out, const double *src,
                          std::size_t count)
{
    std::vector<char> bytes;
    doubles_to_le_bytes(src, count, bytes);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

/// Reads `count` little-endian float64 values.
inline void read_doubles(std::ifstream &in, double *dst, std::size_t count,
                         const std::string &path)
{
    std::vector<char> bytes(count * sizeof(double));
    in.read(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (in.gcount() != static_cast<std::streamsize>(bytes.size()))
        raise(ErrorCode::bad_format, "payload truncated: " + path);
    le_bytes_to_doubles(bytes.data(), count, dst);
}

/// Payload path: manifest path with its extension replaced by .bin.
inline std::filesystem::path payload_path_for(const std::string &json_path)
{
    std::filesystem::path p(json_path);
    p.replace_extension(".bin");
    return p;
}

} // namespace plcsynth::detail
