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

// Test-only reference implementations, kept independent of the library
// code paths they cross-check. Everything here runs in long double.

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace oracles {

// ln Gamma(z) by the Stirling/Bernoulli series after shifting z above 16.
inline long double lgamma_stirling(long double z) {
    if (z <= 0.0L) throw std::domain_error("lgamma_stirling: z must be > 0");
    long double shift = 0.0L;
    while (z < 16.0L) {
        shift -= std::log(z);
        z += 1.0L;
    }
    const long double z2 = z * z;
    long double series = 1.0L / (12.0L * z);
    long double zp = z * z2;
    series -= 1.0L / (360.0L * zp);
    zp *= z2;
    series += 1.0L / (1260.0L * zp);
    zp *= z2;
    series -= 1.0L / (1680.0L * zp);
    zp *= z2;
    series += 1.0L / (1188.0L * zp);
    zp *= z2;
    series -= 691.0L / (360360.0L * zp);
    zp *= z2;
    series += 7.0L / (156.0L * zp);
    const long double half_log_2pi = 0.91893853320467274178L;
    return shift + (z - 0.5L) * std::log(z) - z + half_log_2pi + series;
}

// erf(x) by its Maclaurin series.
inline long double erf_series(long double x) {
    const long double two_over_sqrt_pi = 1.1283791670955125739L;
    long double term = x;
    long double sum = x;
    for (int n = 1; n < 200; ++n) {
        term *= -x * x / n;
        const long double contrib = term / (2 * n + 1);
        sum += contrib;
        if (std::abs(contrib) < 1e-22L * std::abs(sum)) break;
    }
    return two_over_sqrt_pi * sum;
}

// Regularized upper incomplete gamma Q(v, x) by the Legendre continued
// fraction (modified Lentz), valid for x > v.
inline long double upper_gamma_cf(long double v, long double x) {
    const long double tiny = 1e-4000L;
    long double b = x + 1.0L - v;
    long double c = 1.0L / tiny;
    long double d = 1.0L / b;
    long double h = d;
    for (int n = 1; n < 10000; ++n) {
        const long double an = -static_cast<long double>(n) * (n - v);
        b += 2.0L;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0L / d;
        const long double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0L) < 1e-20L)
            return h * std::exp(v * std::log(x) - x - lgamma_stirling(v));
    }
    throw std::runtime_error("upper_gamma_cf: no convergence");
}

}  // namespace oracles
