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

#include "wishart/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace wishart {

namespace {

constexpr double kTermTol = 1e-15;
constexpr int kMaxIter = 500;

[[noreturn]] void fail_convergence(const char* what, double v, double x) {
    // An unconverged incomplete gamma would silently corrupt Pfaffian signs
    // downstream, so this is a hard error rather than a best-effort return.
    throw std::runtime_error(std::string(what) + " did not converge for v=" +
                             std::to_string(v) + ", x=" + std::to_string(x));
}

// P(v, x) by the ascending series, valid and fast for x < v + 1.
double lower_series(double v, double x) {
    if (x == 0.0) return 0.0;
    double term = 1.0 / v;
    double sum = term;
    for (int n = 1; n <= kMaxIter; ++n) {
        term *= x / (v + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * kTermTol)
            return sum * std::exp(v * std::log(x) - x - log_gamma(v));
    }
    fail_convergence("incomplete gamma series", v, x);
}

// Q(v, x) by the Legendre continued fraction (modified Lentz), for x >= v + 1.
double upper_continued_fraction(double v, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - v;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int n = 1; n <= kMaxIter; ++n) {
        double an = -n * (n - v);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kTermTol)
            return h * std::exp(v * std::log(x) - x - log_gamma(v));
    }
    fail_convergence("incomplete gamma continued fraction", v, x);
}

void check_domain(double v, double x) {
    if (!(v > 0.0)) throw std::domain_error("incomplete gamma: v must be > 0");
    if (!(x >= 0.0)) throw std::domain_error("incomplete gamma: x must be >= 0");
}

}  // namespace

double log_gamma(double a) {
    if (!(a > 0.0)) throw std::domain_error("log_gamma: argument must be > 0");
    return std::lgamma(a);
}

double reg_lower_gamma(double v, double x) {
    check_domain(v, x);
    if (x == 0.0) return 0.0;
    if (x < v + 1.0) return lower_series(v, x);
    return 1.0 - upper_continued_fraction(v, x);
}

double reg_upper_gamma(double v, double x) {
    check_domain(v, x);
    if (x == 0.0) return 1.0;
    if (x < v + 1.0) return 1.0 - lower_series(v, x);
    return upper_continued_fraction(v, x);
}

double log_multivariate_gamma(int p, double a) {
    if (p < 1) throw std::domain_error("log_multivariate_gamma: p must be >= 1");
    if (!(a > 0.5 * (p - 1)))
        throw std::domain_error("log_multivariate_gamma: need a > (p-1)/2");
    double result = 0.25 * p * (p - 1) * std::log(std::numbers::pi);
    for (int i = 1; i <= p; ++i) result += log_gamma(a - 0.5 * (i - 1));
    return result;
}

}  // namespace wishart
