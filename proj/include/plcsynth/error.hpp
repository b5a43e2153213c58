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

#pragma once

#include <stdexcept>
#include <string>

namespace plcsynth
{

enum class ErrorCode
{
    io_error,
    bad_format,
    zero_entry,
    non_finite_input,
    dimension_mismatch,
    shape_mismatch,
    too_few_realizations,
    not_symmetric,
    indefinite_matrix,
    empty_slope_samples,
    singular_noise,
    grid_mismatch,
    degenerate_grid,
    empty_input,
    usage_error
};

/// Library-wide exception carrying a machine-readable code (the CLI maps
/// codes to distinct process exit codes).
class Error : public std::runtime_error
{
  public:
    Error(ErrorCode code, const std::string &message)
        : std::runtime_error(message), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string &message)
{
    throw Error(code, message);
}

inline const char *error_code_name(ErrorCode code)
{
    switch (code)
    {
    case ErrorCode::io_error: return "io_error";
    case ErrorCode::bad_format: return "bad_format";
    case ErrorCode::zero_entry: return "zero_entry";
    case ErrorCode::non_finite_input: return "non_finite_input";
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::shape_mismatch: return "shape_mismatch";
    case ErrorCode::too_few_realizations: return "too_few_realizations";
    case ErrorCode::not_symmetric: return "not_symmetric";
    case ErrorCode::indefinite_matrix: return "indefinite_matrix";
    case ErrorCode::empty_slope_samples: return "empty_slope_samples";
    case ErrorCode::singular_noise: return "singular_noise";
    case ErrorCode::grid_mismatch: return "grid_mismatch";
    case ErrorCode::degenerate_grid: return "degenerate_grid";
    case ErrorCode::empty_input: return "empty_input";
    case ErrorCode::usage_error: return "usage_error";
    }
    return "unknown";
}

} // namespace plcsynth
