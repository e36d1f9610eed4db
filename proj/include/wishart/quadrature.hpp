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

#include <functional>
#include <stdexcept>

namespace wishart {

struct QuadSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_subdivisions = 2000;
};

struct QuadResult {
    double value = 0.0;
    double err_est = 0.0;
};

/// Thrown when the requested tolerance is not reached within the
/// subdivision budget. Carries the best estimate obtained so far.
class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& msg, double best_value, double err_est)
        : std::runtime_error(msg), best_value(best_value), err_est(err_est) {}

    double best_value;
    double err_est;
};

/// Adaptive 15-point Gauss-Kronrod integration of f over [a, b].
/// Endpoints are never evaluated, so integrable endpoint singularities
/// x^p with p > -1 are handled by subdivision.
QuadResult integrate_finite(const std::function<double(double)>& f, double a,
                            double b, const QuadSpec& spec = {});

/// Integral of f over [a, inf) via the rational map x = a + t/(1-t).
/// Assumes f decays at least exponentially; no truncation parameter.
QuadResult integrate_semi_infinite(const std::function<double(double)>& f,
                                   double a, const QuadSpec& spec = {});

}  // namespace wishart
