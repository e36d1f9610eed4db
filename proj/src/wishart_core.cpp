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

#include "wishart/wishart_core.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wishart/special_functions.hpp"

namespace wishart {

void ModelParams::validate() const {
    if (K < 1) throw std::invalid_argument("ModelParams: K must be >= 1");
    if (M <= K) throw std::invalid_argument("ModelParams: requires K < M (full-rank regime)");
    if (!(rho > 0.0)) throw std::invalid_argument("ModelParams: rho must be > 0");
}

SignedLogValue log_norm_constant(const ModelParams& p) {
    p.validate();
    const double log_c = 0.5 * p.K * p.K * std::log(std::numbers::pi) -
                         0.5 * p.K * p.M * std::log(2.0 * p.rho) -
                         log_multivariate_gamma(p.K, 0.5 * p.M) -
                         log_multivariate_gamma(p.K, 0.5 * p.K);
    return SignedLogValue::from_parts(1, log_c);
}

SignedLogValue xi(double lambda, const ModelParams& p) {
    if (lambda < 0.0) throw std::domain_error("xi: lambda must be >= 0");
    SignedLogValue power = pow_log(lambda, p.half_power());
    if (power.is_zero()) return power;
    power.log_mag -= lambda / (2.0 * p.rho);
    return power;
}

int exponent_r(int n, int i, int K) {
    if (n < 1 || n > K) throw std::out_of_range("exponent_r: n out of [1, K]");
    if (i < 1 || i > K - 1) throw std::out_of_range("exponent_r: i out of [1, K-1]");
    return i < n ? K - i : K - 1 - i;
}

SignedLogValue theta(KernelIndex idx, double lambda, const ModelParams& p) {
    const int r = exponent_r(idx.n, idx.i, p.K);
    SignedLogValue value = xi(lambda, p);
    if (r == 0 || value.is_zero()) return value;
    value.log_mag += r * std::log(lambda);
    return value;
}

double vandermonde_det(std::span<const double> lambdas) {
    const std::size_t k = lambdas.size();
    double det = 1.0;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) det *= lambdas[i] - lambdas[j];
    return det;
}

double joint_density(std::span<const double> lambdas, const ModelParams& p) {
    p.validate();
    const int k = static_cast<int>(lambdas.size());
    if (k != p.K) throw std::invalid_argument("joint_density: expected K eigenvalues");
    for (int i = 0; i + 1 < k; ++i)
        if (!(lambdas[i] > lambdas[i + 1]))
            throw std::invalid_argument("joint_density: eigenvalues must be strictly descending");
    if (!(lambdas[k - 1] >= 0.0))
        throw std::invalid_argument("joint_density: eigenvalues must be >= 0");

    SignedLogValue result = log_norm_constant(p);
    for (int i = 0; i < k; ++i) {
        result *= xi(lambdas[i], p);
        if (result.is_zero()) return 0.0;
        for (int j = i + 1; j < k; ++j) result.log_mag += std::log(lambdas[i] - lambdas[j]);
    }
    return result.value();
}

}  // namespace wishart
