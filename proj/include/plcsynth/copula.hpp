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
// Matrix analysis and correlated sampling: symmetric PSD square root,
// the 2*sin(r*pi/6) rank-to-linear correlation map, nearest-PSD repair,
// and correlated normal / uniform vector generation on splittable
// per-realization random streams.

#pragma once

#include <armadillo>
#include <cstddef>
#include <cstdint>

#include "plcsynth/error.hpp"
#include "plcsynth/estimation.hpp"

namespace plcsynth
{

/// Symmetric unit-diagonal correlation matrix, PSD after repair.
struct CorrelationMatrix
{
    arma::mat entries;

    std::size_t dim() const { return entries.n_rows; }
};

/// Validates symmetry (1e-10), unit diagonal and entry bounds.
CorrelationMatrix make_correlation(arma::mat entries);

/// Symmetric square root S of a PSD matrix K with S*S^T = K, computed via
/// symmetric eigendecomposition with small negative eigenvalues clipped to
/// zero. Throws not_symmetric, or indefinite_matrix when an eigenvalue
/// falls below -1e-8 * max eigenvalue.
arma::mat psd_sqrt(const arma::mat &k);

/// Entrywise 2*sin(r*pi/6) with nearest-PSD repair; maps a Spearman
/// (rank) correlation target of the uniforms to the Pearson correlation
/// the underlying normals must carry. Fixes -1, 0, 1; diagonal stays 1.
CorrelationMatrix spearman_to_pearson(const CorrelationMatrix &r);

/// Clips negative eigenvalues to zero, reconstructs, and rescales to a
/// unit diagonal. Inputs that are already PSD are returned unchanged.
CorrelationMatrix nearest_psd_repair(const arma::mat &a);

/// n i.i.d. rows of S*z + mean with z standard normal and S =
/// psd_sqrt(params.cov). Row r draws from the substream derived from
/// (seed, r); output is bit-identical for any thread count.
arma::mat sample_correlated_normals(const GaussianFieldParams &params,
                                    std::size_t n, std::uint64_t seed,
                                    int threads = 1);

/// Correlated uniforms on (0,1): x normal with correlation
/// spearman_to_pearson(r_target), u = Phi(x) entrywise.
arma::mat sample_correlated_uniforms(const CorrelationMatrix &r_target,
                                     std::size_t n, std::uint64_t seed,
                                     int threads = 1);

} // namespace plcsynth
