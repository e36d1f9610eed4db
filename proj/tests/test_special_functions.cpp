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

#include <cmath>
#include <doctest.h>
#include <numbers>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "wishart/special_functions.hpp"

using namespace wishart;

namespace {

double rel_err(double got, double want) {
    if (want == 0.0) return std::abs(got);
    return std::abs(got - want) / std::abs(want);
}

}  // namespace

TEST_CASE("log_gamma anchors") {
    CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(log_gamma(0.5) ==
          doctest::Approx(0.5 * std::log(std::numbers::pi)).epsilon(1e-14));
    // value frozen from the long-double Stirling oracle
    const double want_171_5 = 711.71447303295683;
    CHECK(rel_err(static_cast<double>(oracles::lgamma_stirling(171.5L)), want_171_5) < 1e-15);
    CHECK(rel_err(log_gamma(171.5), want_171_5) < 1e-12);
}

TEST_CASE("log_gamma tracks the extended-precision oracle on [0.5, 1000]") {
    for (double a : {0.5, 0.75, 1.5, 2.0, 3.5, 7.0, 12.5, 40.0, 171.5, 375.0, 650.25, 1000.0}) {
        const double want = static_cast<double>(oracles::lgamma_stirling(a));
        CHECK(rel_err(log_gamma(a), want) < 1e-13);
    }
}

TEST_CASE("log_gamma domain") {
    CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(log_gamma(-1.5), std::domain_error);
}

TEST_CASE("reg_lower_gamma anchors") {
    CHECK(rel_err(reg_lower_gamma(1.0, 1.0), 1.0 - std::exp(-1.0)) < 1e-14);
    CHECK(reg_lower_gamma(3.0, 0.0) == 0.0);
    // P(1/2, 1) = erf(1); oracle = extended-precision Maclaurin series
    const double erf1 = static_cast<double>(oracles::erf_series(1.0L));
    CHECK(erf1 == doctest::Approx(0.84270079294971487).epsilon(1e-15));
    CHECK(rel_err(reg_lower_gamma(0.5, 1.0), erf1) < 1e-13);
}

TEST_CASE("reg_upper_gamma anchors") {
    CHECK(rel_err(reg_upper_gamma(1.0, 2.0), std::exp(-2.0)) < 1e-14);
    CHECK(reg_upper_gamma(2.5, 0.0) == 1.0);
    // Q(7.5, 10) against the extended-precision continued fraction
    const double want = static_cast<double>(oracles::upper_gamma_cf(7.5L, 10.0L));
    CHECK(rel_err(reg_upper_gamma(7.5, 10.0), want) < 1e-12);
}

TEST_CASE("incomplete gamma domain errors") {
    CHECK_THROWS_AS(reg_lower_gamma(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(reg_lower_gamma(2.0, -0.5), std::domain_error);
    CHECK_THROWS_AS(reg_upper_gamma(-1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(reg_upper_gamma(2.0, -1e-9), std::domain_error);
}

TEST_CASE("complementarity P + Q = 1 over (0,50] x [0,100]") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> dv(1e-3, 50.0), dx(0.0, 100.0);
    for (int i = 0; i < 2000; ++i) {
        const double v = dv(rng), x = dx(rng);
        CHECK(std::abs(reg_lower_gamma(v, x) + reg_upper_gamma(v, x) - 1.0) < 1e-12);
    }
}

TEST_CASE("recurrence P(v+1,x) = P(v,x) - x^v e^-x / Gamma(v+1)") {
    for (double v : {0.5, 1.0, 2.5, 7.0, 20.0, 55.5}) {
        for (double x : {0.1, 0.9, 2.0, 5.0, 19.5, 60.0}) {
            const double lhs = reg_lower_gamma(v + 1.0, x);
            const double rhs = reg_lower_gamma(v, x) -
                               std::exp(v * std::log(x) - x - log_gamma(v + 1.0));
            const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
            CHECK(std::abs(lhs - rhs) / scale < 1e-11);
        }
    }
}

TEST_CASE("P is nondecreasing in x") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> dv(0.2, 40.0);
    for (int rep = 0; rep < 50; ++rep) {
        const double v = dv(rng);
        double prev = -1.0;
        for (double x = 0.0; x <= 80.0; x += 0.8) {
            const double p = reg_lower_gamma(v, x);
            CHECK(p >= prev);
            prev = p;
        }
        CHECK(prev <= 1.0 + 1e-15);
    }
}

TEST_CASE("log_multivariate_gamma") {
    CHECK(log_multivariate_gamma(1, 2.0) == 0.0);
    CHECK(rel_err(log_multivariate_gamma(2, 1.0), std::log(std::numbers::pi)) < 1e-14);

    // p = 1 must be bit-equal to log_gamma
    for (double a : {0.5, 1.0, 3.25, 17.0, 171.5})
        CHECK(log_multivariate_gamma(1, a) == log_gamma(a));

    // p = 5, a = 10 against direct extended-precision summation
    long double want = 5.0L * 4.0L / 4.0L * std::log(3.14159265358979323846264338328L);
    for (int i = 1; i <= 5; ++i) want += oracles::lgamma_stirling(10.0L - 0.5L * (i - 1));
    CHECK(rel_err(log_multivariate_gamma(5, 10.0), static_cast<double>(want)) < 1e-13);

    CHECK_THROWS_AS(log_multivariate_gamma(0, 1.0), std::domain_error);
    CHECK_THROWS_AS(log_multivariate_gamma(5, 2.0), std::domain_error);  // a <= (p-1)/2
}
