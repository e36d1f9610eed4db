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

#include <string>
#include <vector>

#include "wishart/pfaffian.hpp"
#include "wishart/quadrature.hpp"
#include "wishart/signed_log.hpp"
#include "wishart/wishart_core.hpp"

namespace wishart {

enum class Extreme { largest, smallest };

/// How the odd count of kernel functions is completed to an even-order
/// skew matrix when K is even. single_column appends one row/column of
/// one-variable integrals (the standard construction, and the default:
/// it is the convention that reproduces the brute-force marginals).
/// paper_two_row appends a ones column plus the integral column, which
/// yields an odd-order matrix whose Pfaffian vanishes identically; it is
/// kept for regression tests only.
enum class AugConvention { single_column, paper_two_row };

/// A density sampled on a grid, with trapezoidal cumulative values.
struct DensityCurve {
    Extreme which = Extreme::largest;
    ModelParams params;
    std::vector<double> grid;
    std::vector<double> pdf;
    std::vector<double> cdf;
    /// Per-point success flags; failed points carry pdf = 0 and a warning.
    std::vector<unsigned char> valid;
    std::vector<std::string> warnings;
    /// Final trapezoidal mass (should be near 1 on an adequate grid).
    double cdf_total = 0.0;
};

/// Pairwise signed double integral b_{i,j} of the largest-eigenvalue
/// kernel over [0, lambda1]^2; antisymmetric in (i, j), exactly zero for
/// i == j. Returned with its full gamma and (2 rho)^a prefactors as a
/// SignedLogValue.
SignedLogValue kernel_entry_largest(int n, int i, int j, double lambda1,
                                    const ModelParams& p, const QuadSpec& spec);

/// One-variable augmentation integral of theta_i over [0, lambda1]:
/// (2 rho)^{a_i} Gamma(a_i) P(a_i, lambda1 / 2 rho).
SignedLogValue aug_entry_largest(int n, int i, double lambda1, const ModelParams& p);

/// Kernel matrix of expansion term n at lambda1. Order K-1 for odd K;
/// order K for even K under the default augmentation.
SkewMatrix assemble_skew_largest(int n, double lambda1, const ModelParams& p,
                                 const QuadSpec& spec,
                                 AugConvention convention = AugConvention::single_column);

/// Density of the largest eigenvalue at lambda1 >= 0.
double pdf_largest(double lambda1, const ModelParams& p, const QuadSpec& spec = {});

/// Smallest-eigenvalue counterparts; integration runs over [lambdaK, inf).
SignedLogValue kernel_entry_smallest(int n, int i, int j, double lambdaK,
                                     const ModelParams& p, const QuadSpec& spec);
SignedLogValue aug_entry_smallest(int n, int i, double lambdaK, const ModelParams& p);
SkewMatrix assemble_skew_smallest(int n, double lambdaK, const ModelParams& p,
                                  const QuadSpec& spec,
                                  AugConvention convention = AugConvention::single_column);
double pdf_smallest(double lambdaK, const ModelParams& p, const QuadSpec& spec = {});

/// Upper grid limit q such that the chi-square envelope on the total
/// spectrum mass beyond q stays below tail_mass.
double auto_grid_upper(const ModelParams& p, double tail_mass = 1e-6);

/// Evaluate the requested extreme density on a strictly increasing grid
/// (grid[0] >= 0). Points are independent and may be fanned out over
/// n_threads; results are merged in grid order, so the output does not
/// depend on the thread count. Per-point numerical failures are recorded
/// as warnings, not thrown.
DensityCurve evaluate_curve(Extreme which, std::span<const double> grid,
                            const ModelParams& p, const QuadSpec& spec = {},
                            int n_threads = 1);

}  // namespace wishart
