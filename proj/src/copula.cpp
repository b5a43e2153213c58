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

#include "plcsynth/copula.hpp"

#include <cmath>

#include "plcsynth/mathutil.hpp"
#include "plcsynth/rng.hpp"
#include "parallel.hpp"

namespace plcsynth
{

namespace
{

void require_square_symmetric(const arma::mat &m, const char *what)
{
    if (m.n_rows != m.n_cols || m.n_rows == 0)
        raise(ErrorCode::dimension_mismatch,
              std::string(what) + ": matrix must be square and non-empty");
    const double scale = std::max(1.0, arma::abs(m).max());
    if (arma::abs(m - m.t()).max() > 1e-10 * scale)
        raise(ErrorCode::not_symmetric,
              std::string(what) + ": matrix is not symmetric");
}

// One sampled row: out = s_root * z + mean with z drawn from `stream`.
// Plain sequential dot products keep the result independent of the BLAS
// backend and of the caller's thread count.
void sample_row(const arma::mat &s_root, const arma::vec *mean,
                rng::Stream &stream, arma::mat &out, std::size_t row)
{
    const std::size_t d = s_root.n_rows;
    arma::vec z(d);
    for (std::size_t j = 0; j < d; ++j)
        z(j) = stream.normal();
    for (std::size_t i = 0; i < d; ++i)
    {
        // s_root is symmetric, so reading column i is reading row i.
        double acc = arma::dot(s_root.col(i), z);
        if (mean)
            acc += (*mean)(i);
        out(row, i) = acc;
    }
}

} // namespace

CorrelationMatrix make_correlation(arma::mat entries)
{
    require_square_symmetric(entries, "correlation matrix");
    for (arma::uword i = 0; i < entries.n_rows; ++i)
        if (std::abs(entries(i, i) - 1.0) > 1e-10)
            raise(ErrorCode::bad_format,
                  "correlation matrix diagonal must be 1");
    if (arma::abs(entries).max() > 1.0 + 1e-10)
        raise(ErrorCode::bad_format,
              "correlation entries must lie in [-1, 1]");
    return CorrelationMatrix{std::move(entries)};
}

arma::mat psd_sqrt(const arma::mat &k)
{
    require_square_symmetric(k, "psd_sqrt");
    arma::vec eigval;
    arma::mat eigvec;
    if (!arma::eig_sym(eigval, eigvec, arma::symmatu(k)))
        raise(ErrorCode::indefinite_matrix,
              "psd_sqrt: eigendecomposition failed");
    const double max_eig = eigval.max();
    const double tol = 1e-8 * std::max(max_eig, 0.0);
    if (eigval.min() < -std::max(tol, 1e-300))
        raise(ErrorCode::indefinite_matrix,
              "psd_sqrt: eigenvalue " + std::to_string(eigval.min()) +
                  " below tolerance");
    arma::vec root = eigval;
    for (arma::uword i = 0; i < root.n_elem; ++i)
        root(i) = root(i) > 0.0 ? std::sqrt(root(i)) : 0.0;
    return eigvec * arma::diagmat(root) * eigvec.t();
}

CorrelationMatrix nearest_psd_repair(const arma::mat &a)
{
    require_square_symmetric(a, "nearest_psd_repair");
    arma::vec eigval;
    arma::mat eigvec;
    if (!arma::eig_sym(eigval, eigvec, arma::symmatu(a)))
        raise(ErrorCode::indefinite_matrix,
              "nearest_psd_repair: eigendecomposition failed");
    if (eigval.min() >= 0.0)
        return CorrelationMatrix{a}; // already PSD: exact passthrough

    arma::vec clipped = arma::clamp(eigval, 0.0, arma::datum::inf);
    arma::mat b = eigvec * arma::diagmat(clipped) * eigvec.t();
    b = 0.5 * (b + b.t());

    // Rescale to a unit diagonal.
    const std::size_t d = b.n_rows;
    arma::vec scale(d);
    for (std::size_t i = 0; i < d; ++i)
        scale(i) = b(i, i) > 0.0 ? 1.0 / std::sqrt(b(i, i)) : 0.0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            b(i, j) = i == j ? 1.0 : b(i, j) * scale(i) * scale(j);
    return CorrelationMatrix{std::move(b)};
}

CorrelationMatrix spearman_to_pearson(const CorrelationMatrix &r)
{
    arma::mat mapped = 2.0 * arma::sin(r.entries * (kPi / 6.0));
    mapped = 0.5 * (mapped + mapped.t());
    mapped.diag().ones(); // 2*sin(pi/6) = 1
    return nearest_psd_repair(mapped);
}

arma::mat sample_correlated_normals(const GaussianFieldParams &params,
                                    std::size_t n, std::uint64_t seed,
                                    int threads)
{
    if (n < 1)
        raise(ErrorCode::usage_error, "sample count must be >= 1");
    if (params.mean.n_elem != params.cov.n_rows)
        raise(ErrorCode::dimension_mismatch,
              "mean length does not match covariance dimension");
    const arma::mat s_root = psd_sqrt(params.cov);
    arma::mat out(n, params.cov.n_rows);
    detail::parallel_for(n, threads, [&](std::size_t row) {
        rng::Stream stream(seed, row);
        sample_row(s_root, &params.mean, stream, out, row);
    });
    return out;
}

arma::mat sample_correlated_uniforms(const CorrelationMatrix &r_target,
                                     std::size_t n, std::uint64_t seed,
                                     int threads)
{
    if (n < 1)
        raise(ErrorCode::usage_error, "sample count must be >= 1");
    const CorrelationMatrix pearson = spearman_to_pearson(r_target);
    const arma::mat s_root = psd_sqrt(pearson.entries);
    arma::mat out(n, pearson.dim());
    detail::parallel_for(n, threads, [&](std::size_t row) {
        rng::Stream stream(seed, row);
        sample_row(s_root, nullptr, stream, out, row);
        for (arma::uword j = 0; j < out.n_cols; ++j)
            out(row, j) = normal_cdf(out(row, j));
    });
    return out;
}

} // namespace plcsynth
