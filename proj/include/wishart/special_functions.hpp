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

namespace wishart {

/// ln Gamma(a) for a > 0.
double log_gamma(double a);

/// Regularized lower incomplete gamma P(v, x) = gamma(v, x) / Gamma(v),
/// v > 0, x >= 0. Series expansion for x < v + 1, complement of the
/// continued fraction otherwise.
double reg_lower_gamma(double v, double x);

/// Regularized upper incomplete gamma Q(v, x) = 1 - P(v, x).
double reg_upper_gamma(double v, double x);

/// ln of the multivariate gamma function
/// Gamma_p(a) = pi^{p(p-1)/4} prod_{i=1}^{p} Gamma(a - (i-1)/2),
/// defined for a > (p-1)/2.
double log_multivariate_gamma(int p, double a);

}  // namespace wishart
