/*
 * Copyright 2026 The wishart-extremes authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <vector>

#include "wishart/extreme_densities.hpp"
#include "wishart/wishart_core.hpp"

namespace wishart {

/// Sorted extreme-eigenvalue draws with their RNG provenance.
struct EmpiricalSample {
    Extreme which = Extreme::largest;
    ModelParams params;
    std::vector<double> values;  // ascending
    long n_samples = 0;
    std::uint64_t seed = 0;
    /// Draws that needed an eigensolver retry (sub-stream advanced).
    long retried_draws = 0;
};

/// Draw n_samples extreme eigenvalues of W = A^T A, A an M x K matrix of
/// i.i.d. N(0, rho) entries. Each draw uses its own counter-derived
/// sub-stream, so the result is bit-identical for a given (params, seed,
/// n_samples) regardless of n_threads, and the same (seed, draw) pair
/// reproduces the same matrix for both extremes.
EmpiricalSample sample_extreme_eigs(const ModelParams& p, long n_samples,
                                    std::uint64_t seed, Extreme which,
                                    int n_threads = 1);

/// Direct nested ordered-region quadrature of the joint density; the
/// brute-force cross-check for the Pfaffian pipeline. Supported for
/// 2 <= K <= 4.
double brute_force_pdf(double lambda, const ModelParams& p, Extreme which,
                       const QuadSpec& spec = {});

/// Curve cdf at x by linear interpolation, clamped to the grid range.
double curve_cdf_at(const DensityCurve& curve, double x);

/// Sup-norm distance between the sample's empirical cdf and the curve cdf.
double ks_statistic(const EmpiricalSample& sample, const DensityCurve& curve);

/// Fraction of sample values outside the curve's grid range (mass the KS
/// comparison can only see as clamped).
double clipped_fraction(const EmpiricalSample& sample, const DensityCurve& curve);

}  // namespace wishart
