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

#include <cmath>

namespace plcsynth
{

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Wraps an angle to the principal interval (-pi, pi].
inline double wrap_to_pi(double x)
{
    double y = std::remainder(x, kTwoPi); // [-pi, pi]
    if (y <= -kPi)
        y += kTwoPi;
    return y;
}

/// Standard normal CDF. Evaluated as 0.5*erfc(-x/sqrt(2)); absolute error
/// is below 1e-15 over the full double range, well inside the 1e-10
/// accuracy contract of the copula mapping.
inline double normal_cdf(double x)
{
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

/// dBm/Hz -> W/Hz
inline double dbm_per_hz_to_w_per_hz(double dbm)
{
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

/// W/Hz -> dBm/Hz
inline double w_per_hz_to_dbm_per_hz(double w)
{
    return 10.0 * std::log10(w) + 30.0;
}

/// Power ratio -> dB
inline double power_db(double ratio)
{
    return 10.0 * std::log10(ratio);
}

} // namespace plcsynth
