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

#include <Eigen/Dense>
#include <span>

#include "wishart/signed_log.hpp"

namespace wishart {

/// Dense skew-symmetric matrix with a global log-domain scale factor:
/// the represented matrix is exp(log_scale) * entries. Kernel entries of
/// the eigenvalue densities span hundreds of orders of magnitude, so the
/// scale lives outside the stored doubles.
///
/// Construction validates skew-symmetry (relative tolerance 1e-12) and an
/// exactly zero diagonal. Odd orders are constructible -- they represent
/// matrices whose Pfaffian is identically zero -- but pfaffian() rejects
/// them as a structural error.
class SkewMatrix {
  public:
    explicit SkewMatrix(Eigen::MatrixXd entries, double log_scale = 0.0);

    int order() const { return static_cast<int>(entries_.rows()); }
    const Eigen::MatrixXd& entries() const { return entries_; }
    double log_scale() const { return log_scale_; }

  private:
    Eigen::MatrixXd entries_;
    double log_scale_;
};

/// Pfaffian including sign, via Parlett-Reid skew elimination with partial
/// pivoting; pivots are accumulated in log space. The log_scale contributes
/// (order/2) * log_scale through Pf(cA) = c^{n/2} Pf(A). Rows whose scaled
/// pivot falls below 1e-300 make the result sign = 0.
SignedLogValue pfaffian(const SkewMatrix& m);

/// Congruence D*A*D with positive diagonal d, compensated in log_scale so
/// the Pfaffian of the result equals the Pfaffian of the input
/// (Pf(DAD) = det(D) Pf(A)).
SkewMatrix congruence_scale(const SkewMatrix& m, std::span<const double> d);

}  // namespace wishart
