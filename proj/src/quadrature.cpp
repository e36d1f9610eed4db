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

#include "wishart/quadrature.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace wishart {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
// Positive abscissae; even indices belong to the embedded Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double value;
    double err;
};

bool operator<(const Panel& x, const Panel& y) { return x.err < y.err; }

Panel kronrod15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double gauss = kWg[3] * fc;
    double kronrod = kWgk[7] * fc;

    for (int i = 0; i < 7; ++i) {
        const double dx = half * kXgk[i];
        const double fsum = f(center - dx) + f(center + dx);
        kronrod += kWgk[i] * fsum;
        if (i % 2 == 1) gauss += kWg[i / 2] * fsum;
    }

    // |G7 - K15| is a deliberately conservative bound on the K15 error.
    return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

void check_spec(const QuadSpec& spec) {
    if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0))
        throw std::invalid_argument("QuadSpec: tolerances must be positive");
    if (spec.max_subdivisions < 1)
        throw std::invalid_argument("QuadSpec: max_subdivisions must be >= 1");
}

QuadResult adaptive(const std::function<double(double)>& f, double a, double b,
                    const QuadSpec& spec) {
    check_spec(spec);
    if (a == b) return {0.0, 0.0};
    if (a > b) throw std::invalid_argument("integrate_finite: requires a <= b");

    std::priority_queue<Panel> queue;
    queue.push(kronrod15(f, a, b));
    // Panels too narrow to split further are retired here; their error
    // stays in the budget.
    double settled_value = 0.0, settled_err = 0.0;
    double queued_value = queue.top().value, queued_err = queue.top().err;

    auto tolerance_met = [&] {
        const double total = settled_value + queued_value;
        const double err = settled_err + queued_err;
        return err <= std::max(spec.rel_tol * std::abs(total), spec.abs_tol);
    };

    int splits = 0;
    while (!tolerance_met() && !queue.empty()) {
        if (splits >= spec.max_subdivisions) {
            const double total = settled_value + queued_value;
            const double err = settled_err + queued_err;
            throw QuadratureError("quadrature: tolerance not reached in " +
                                      std::to_string(spec.max_subdivisions) +
                                      " subdivisions",
                                  total, err);
        }
        Panel worst = queue.top();
        queue.pop();
        queued_value -= worst.value;
        queued_err -= worst.err;

        const double mid = 0.5 * (worst.a + worst.b);
        const double width_floor = std::numeric_limits<double>::epsilon() *
                                   std::max({std::abs(worst.a), std::abs(worst.b), 1.0});
        if (worst.b - worst.a <= 2.0 * width_floor || mid <= worst.a || mid >= worst.b) {
            settled_value += worst.value;
            settled_err += worst.err;
            continue;
        }

        Panel left = kronrod15(f, worst.a, mid);
        Panel right = kronrod15(f, mid, worst.b);
        queued_value += left.value + right.value;
        queued_err += left.err + right.err;
        queue.push(left);
        queue.push(right);
        ++splits;
    }

    return {settled_value + queued_value, settled_err + queued_err};
}

}  // namespace

QuadResult integrate_finite(const std::function<double(double)>& f, double a,
                            double b, const QuadSpec& spec) {
    return adaptive(f, a, b, spec);
}

QuadResult integrate_semi_infinite(const std::function<double(double)>& f,
                                   double a, const QuadSpec& spec) {
    // x = a + t/(1-t) maps [0,1) onto [a,inf); exponential decay of f makes
    // the transformed integrand vanish at t -> 1, which is never evaluated.
    auto g = [&f, a](double t) {
        const double om = 1.0 - t;
        const double x = a + t / om;
        const double fx = f(x);
        if (fx == 0.0) return 0.0;
        return fx / (om * om);
    };
    return adaptive(g, 0.0, 1.0, spec);
}

}  // namespace wishart
