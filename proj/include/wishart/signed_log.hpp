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

#include <cmath>
#include <span>
#include <stdexcept>

namespace wishart {

/// A real number stored as sign * exp(log_mag).
///
/// Normalization constants, Pfaffians and gamma-function products in this
/// library routinely exceed the double range, so every overflow-prone
/// quantity is carried in this form and only exponentiated at the end.
/// A zero value is canonical: sign == 0 and log_mag == 0.
struct SignedLogValue {
    int sign = 0;
    double log_mag = 0.0;

    static SignedLogValue zero() { return {0, 0.0}; }
    static SignedLogValue one() { return {1, 0.0}; }

    static SignedLogValue from_parts(int sign, double log_mag) {
        if (sign == 0) return zero();
        return {sign > 0 ? 1 : -1, log_mag};
    }

    static SignedLogValue from_value(double x) {
        if (std::isnan(x)) throw std::invalid_argument("SignedLogValue: NaN input");
        if (x == 0.0) return zero();
        return {x > 0.0 ? 1 : -1, std::log(std::abs(x))};
    }

    bool is_zero() const { return sign == 0; }

    /// Linear-space value; may round to 0 or +/-inf outside double range.
    double value() const {
        if (sign == 0) return 0.0;
        return sign * std::exp(log_mag);
    }

    SignedLogValue negated() const { return {-sign, sign == 0 ? 0.0 : log_mag}; }

    SignedLogValue& operator*=(const SignedLogValue& o) {
        if (sign == 0 || o.sign == 0) {
            *this = zero();
        } else {
            sign *= o.sign;
            log_mag += o.log_mag;
        }
        return *this;
    }

    friend SignedLogValue operator*(SignedLogValue a, const SignedLogValue& b) {
        a *= b;
        return a;
    }
};

/// base^exponent for base >= 0, in log space. base == 0 maps to the
/// sign = 0 convention instead of NaN so that grid evaluation can start at 0.
inline SignedLogValue pow_log(double base, double exponent) {
    if (base < 0.0) throw std::domain_error("pow_log: negative base");
    if (base == 0.0) {
        if (exponent > 0.0) return SignedLogValue::zero();
        if (exponent == 0.0) return SignedLogValue::one();
        throw std::domain_error("pow_log: 0 raised to negative power");
    }
    return {1, exponent * std::log(base)};
}

/// Signed log-sum-exp: the exact sum of the terms, as a SignedLogValue.
/// Cancellation between opposite-sign terms is resolved in linear space
/// relative to the largest magnitude.
inline SignedLogValue signed_log_sum(std::span<const SignedLogValue> terms) {
    double max_log = -std::numeric_limits<double>::infinity();
    for (const auto& t : terms)
        if (t.sign != 0 && t.log_mag > max_log) max_log = t.log_mag;
    if (!std::isfinite(max_log)) return SignedLogValue::zero();

    double acc = 0.0;
    for (const auto& t : terms)
        if (t.sign != 0) acc += t.sign * std::exp(t.log_mag - max_log);
    if (acc == 0.0) return SignedLogValue::zero();
    return {acc > 0.0 ? 1 : -1, max_log + std::log(std::abs(acc))};
}

}  // namespace wishart
