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

#include "wishart/pfaffian.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace wishart {

namespace {

constexpr double kSkewTol = 1e-12;
constexpr double kPivotFloor = 1e-300;
constexpr double kEquilibrateRatio = 1e8;

}  // namespace

SkewMatrix::SkewMatrix(Eigen::MatrixXd entries, double log_scale)
    : entries_(std::move(entries)), log_scale_(log_scale) {
    if (entries_.rows() != entries_.cols())
        throw std::invalid_argument("SkewMatrix: matrix must be square");
    const int n = order();
    for (int i = 0; i < n; ++i) {
        if (entries_(i, i) != 0.0)
            throw std::invalid_argument("SkewMatrix: diagonal must be exactly zero");
        for (int j = i + 1; j < n; ++j) {
            const double x = entries_(i, j), y = entries_(j, i);
            const double scale = std::max(std::abs(x), std::abs(y));
            if (std::abs(x + y) > kSkewTol * scale)
                throw std::invalid_argument("SkewMatrix: entries violate skew-symmetry");
        }
    }
}

SkewMatrix congruence_scale(const SkewMatrix& m, std::span<const double> d) {
    const int n = m.order();
    if (static_cast<int>(d.size()) != n)
        throw std::invalid_argument("congruence_scale: scale vector size mismatch");
    if (n == 0) return m;

    double sum_log_d = 0.0;
    for (double di : d) {
        if (!(di > 0.0)) throw std::domain_error("congruence_scale: scales must be positive");
        sum_log_d += std::log(di);
    }

    Eigen::MatrixXd scaled = m.entries();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scaled(i, j) *= d[i] * d[j];

    // Pf(DAD) = det(D) Pf(A); undo det(D) through the global scale, which
    // enters the Pfaffian as (n/2) * log_scale.
    return SkewMatrix(std::move(scaled), m.log_scale() - 2.0 * sum_log_d / n);
}

SignedLogValue pfaffian(const SkewMatrix& m) {
    const int n = m.order();
    if (n % 2 != 0)
        throw std::invalid_argument("pfaffian: odd order (Pfaffian identically zero)");
    if (n == 0) return SignedLogValue::one();

    Eigen::MatrixXd w = m.entries();

    // Row-max equilibration when entry magnitudes are badly spread; the
    // compensating det(D) is removed from the result afterwards.
    double log_det_d = 0.0;
    {
        Eigen::VectorXd rowmax = w.cwiseAbs().rowwise().maxCoeff();
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (int i = 0; i < n; ++i) {
            if (rowmax(i) == 0.0) return SignedLogValue::zero();  // zero row
            lo = std::min(lo, rowmax(i));
            hi = std::max(hi, rowmax(i));
        }
        if (hi > kEquilibrateRatio * lo) {
            for (int i = 0; i < n; ++i) {
                const double di = 1.0 / std::sqrt(rowmax(i));
                log_det_d += std::log(di);
                w.row(i) *= di;
                w.col(i) *= di;
            }
        }
    }

    int sign = 1;
    double log_mag = 0.0;

    for (int k = 0; k + 1 < n; k += 2) {
        // Largest |w(i, k)| below the diagonal becomes the pivot row.
        int kp = k + 1;
        for (int i = k + 2; i < n; ++i)
            if (std::abs(w(i, k)) > std::abs(w(kp, k))) kp = i;
        if (kp != k + 1) {
            w.row(k + 1).swap(w.row(kp));
            w.col(k + 1).swap(w.col(kp));
            sign = -sign;
        }

        const double pivot = w(k, k + 1);
        if (std::abs(pivot) < kPivotFloor) return SignedLogValue::zero();
        if (pivot < 0.0) sign = -sign;
        log_mag += std::log(std::abs(pivot));

        // Skew-preserving elimination of column k below row k+1. The Gauss
        // multipliers are mu_i = -w(i,k)/pivot = w(k,i)/pivot.
        const int rest = n - (k + 2);
        if (rest > 0) {
            Eigen::VectorXd mu = w.row(k).segment(k + 2, rest).transpose() / pivot;
            Eigen::VectorXd col = w.col(k + 1).segment(k + 2, rest);
            w.block(k + 2, k + 2, rest, rest).noalias() +=
                mu * col.transpose() - col * mu.transpose();
        }
    }

    const double total_log =
        log_mag - log_det_d + 0.5 * n * m.log_scale();
    return SignedLogValue::from_parts(sign, total_log);
}

}  // namespace wishart
