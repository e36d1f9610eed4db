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

#include <span>

#include "wishart/signed_log.hpp"

namespace wishart {

/// Problem dimensions for W = A^T A with A an M x K Gaussian matrix whose
/// entries have variance rho (covariance rho * I_K per column). Full-rank
/// regime: K < M.
struct ModelParams {
    int K = 1;
    int M = 2;
    double rho = 1.0;

    void validate() const;
    /// (M - K - 1) / 2, the exponent of the eigenvalue weight.
    double half_power() const { return 0.5 * (M - K - 1); }
};

/// Index (n, i) into the expansion-term / kernel-row grid: n in [1, K],
/// i in [1, K-1].
struct KernelIndex {
    int n;
    int i;
};

/// ln c where c = pi^{K^2/2} (2 rho)^{-KM/2} / (Gamma_K(M/2) Gamma_K(K/2))
/// normalizes the joint eigenvalue density. Always positive.
SignedLogValue log_norm_constant(const ModelParams& p);

/// Eigenvalue weight xi(lambda) = lambda^{(M-K-1)/2} e^{-lambda/(2 rho)}.
/// xi(0) is 0 when the power is positive and 1 when M = K + 1.
SignedLogValue xi(double lambda, const ModelParams& p);

/// Surviving Vandermonde column power after deleting column n:
/// r = K - i for i < n, K - 1 - i for i >= n.
int exponent_r(int n, int i, int K);

/// theta_i(lambda) = lambda^{r_{n,i}} xi(lambda). With r = 0 this is xi
/// itself (same code path).
SignedLogValue theta(KernelIndex idx, double lambda, const ModelParams& p);

/// prod_{i<j} (lambda_i - lambda_j); the determinant of the power matrix
/// with entries lambda_i^{K-j}.
double vandermonde_det(std::span<const double> lambdas);

/// Joint density of the ordered spectrum, f(lambda) = c |V| prod xi.
/// Input must be strictly descending with the last entry >= 0; permuted
/// inputs are rejected, not symmetrized.
double joint_density(std::span<const double> lambdas, const ModelParams& p);

}  // namespace wishart
