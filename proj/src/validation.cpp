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

#include "wishart/validation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace wishart {

namespace {

// SplitMix64: the per-draw stream generator. Draw streams are derived by
// keyed mixing of (seed, draw index, retry), which keeps draws independent
// of each other and of the thread schedule.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t s) : state(s) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in (0, 1]; never 0, so log() below is safe.
    double uniform() { return ((next() >> 11) + 1) * 0x1.0p-53; }
};

std::uint64_t stream_key(std::uint64_t seed, std::uint64_t draw, std::uint64_t retry) {
    SplitMix64 h(seed ^ (0xA0761D6478BD642FULL * (draw + 1)) ^
                 (0xE7037ED1A0B428DBULL * retry));
    return h.next();
}

// Box-Muller transform; fixed here (rather than std::normal_distribution)
// so samples are reproducible across standard libraries.
void fill_gaussian(SplitMix64& rng, double scale, Eigen::MatrixXd& a) {
    const Eigen::Index total = a.size();
    double* data = a.data();
    for (Eigen::Index i = 0; i < total; i += 2) {
        const double u1 = rng.uniform();
        const double u2 = rng.uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * std::numbers::pi * u2;
        data[i] = scale * r * std::cos(phi);
        if (i + 1 < total) data[i + 1] = scale * r * std::sin(phi);
    }
}

double draw_extreme(const ModelParams& p, std::uint64_t seed, long draw,
                    Extreme which, long& retries) {
    Eigen::MatrixXd a(p.M, p.K);
    const double scale = std::sqrt(p.rho);
    for (std::uint64_t retry = 0;; ++retry) {
        SplitMix64 rng(stream_key(seed, static_cast<std::uint64_t>(draw), retry));
        fill_gaussian(rng, scale, a);
        Eigen::MatrixXd w = a.transpose() * a;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(w, Eigen::EigenvaluesOnly);
        if (solver.info() == Eigen::Success) {
            const auto& eigs = solver.eigenvalues();
            return which == Extreme::largest ? eigs(p.K - 1) : eigs(0);
        }
        if (retry >= 64)
            throw std::runtime_error("sample_extreme_eigs: eigensolver failed 64 times on one draw");
        ++retries;
    }
}

// Nested ordered-region quadrature. level counts inward from the fixed
// extreme eigenvalue; the relative tolerance tightens one decade per level
// of nesting so inner errors stay below the outer discretization.
double nested_largest(std::vector<double>& lams, std::size_t level,
                      const ModelParams& p, double base_rel, int depth,
                      const QuadSpec& spec) {
    if (level == lams.size()) {
        // Quadrature nodes are interior, but guard rounding-induced ties.
        for (std::size_t i = 0; i + 1 < lams.size(); ++i)
            if (!(lams[i] > lams[i + 1])) return 0.0;
        return joint_density(lams, p);
    }
    QuadSpec level_spec = spec;
    level_spec.rel_tol = base_rel * std::pow(10.0, static_cast<double>(depth - 1 - (level - 1)));
    auto f = [&](double x) {
        lams[level] = x;
        return nested_largest(lams, level + 1, p, base_rel, depth, spec);
    };
    return integrate_finite(f, 0.0, lams[level - 1], level_spec).value;
}

double nested_smallest(std::vector<double>& lams, std::size_t level,
                       const ModelParams& p, double base_rel, int depth,
                       const QuadSpec& spec) {
    const std::size_t k = lams.size();
    if (level == k) {
        for (std::size_t i = 0; i + 1 < k; ++i)
            if (!(lams[i] > lams[i + 1])) return 0.0;
        return joint_density(lams, p);
    }
    // level counts from the smallest upward: variable index k-1-level.
    const std::size_t idx = k - 1 - level;
    QuadSpec level_spec = spec;
    level_spec.rel_tol = base_rel * std::pow(10.0, static_cast<double>(depth - 1 - (level - 1)));
    auto f = [&](double x) {
        lams[idx] = x;
        return nested_smallest(lams, level + 1, p, base_rel, depth, spec);
    };
    return integrate_semi_infinite(f, lams[idx + 1], level_spec).value;
}

}  // namespace

EmpiricalSample sample_extreme_eigs(const ModelParams& p, long n_samples,
                                    std::uint64_t seed, Extreme which,
                                    int n_threads) {
    p.validate();
    if (n_samples < 1)
        throw std::invalid_argument("sample_extreme_eigs: n_samples must be >= 1");

    EmpiricalSample sample;
    sample.which = which;
    sample.params = p;
    sample.n_samples = n_samples;
    sample.seed = seed;
    sample.values.assign(static_cast<std::size_t>(n_samples), 0.0);

    const int threads =
        std::max(1, std::min<int>(n_threads, static_cast<int>(std::min<long>(n_samples, 64))));
    std::atomic<long> total_retries{0};
    if (threads == 1) {
        long retries = 0;
        for (long d = 0; d < n_samples; ++d)
            sample.values[static_cast<std::size_t>(d)] = draw_extreme(p, seed, d, which, retries);
        total_retries = retries;
    } else {
        std::atomic<long> next{0};
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                long retries = 0;
                for (long d = next++; d < n_samples; d = next++)
                    sample.values[static_cast<std::size_t>(d)] =
                        draw_extreme(p, seed, d, which, retries);
                total_retries += retries;
            });
        for (auto& th : pool) th.join();
    }
    sample.retried_draws = total_retries;

    std::sort(sample.values.begin(), sample.values.end());
    return sample;
}

double brute_force_pdf(double lambda, const ModelParams& p, Extreme which,
                       const QuadSpec& spec) {
    p.validate();
    if (p.K < 2 || p.K > 4)
        throw std::invalid_argument("brute_force_pdf: supported only for 2 <= K <= 4");
    if (!(lambda >= 0.0)) throw std::domain_error("brute_force_pdf: lambda must be >= 0");

    const int depth = p.K - 1;
    const double base_rel = p.K <= 3 ? 1e-10 : 1e-9;
    std::vector<double> lams(static_cast<std::size_t>(p.K), 0.0);
    if (which == Extreme::largest) {
        lams[0] = lambda;
        return nested_largest(lams, 1, p, base_rel, depth, spec);
    }
    lams[static_cast<std::size_t>(p.K) - 1] = lambda;
    return nested_smallest(lams, 1, p, base_rel, depth, spec);
}

double curve_cdf_at(const DensityCurve& curve, double x) {
    const auto& g = curve.grid;
    const auto& c = curve.cdf;
    if (x <= g.front()) return std::clamp(c.front(), 0.0, 1.0);
    if (x >= g.back()) return std::clamp(c.back(), 0.0, 1.0);
    const auto it = std::upper_bound(g.begin(), g.end(), x);
    const std::size_t hi = static_cast<std::size_t>(it - g.begin());
    const std::size_t lo = hi - 1;
    const double t = (x - g[lo]) / (g[hi] - g[lo]);
    return std::clamp(c[lo] + t * (c[hi] - c[lo]), 0.0, 1.0);
}

double ks_statistic(const EmpiricalSample& sample, const DensityCurve& curve) {
    if (sample.values.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    const double n = static_cast<double>(sample.values.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.values.size(); ++i) {
        const double f = curve_cdf_at(curve, sample.values[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

double clipped_fraction(const EmpiricalSample& sample, const DensityCurve& curve) {
    if (sample.values.empty()) throw std::invalid_argument("clipped_fraction: empty sample");
    const double lo = curve.grid.front(), hi = curve.grid.back();
    long clipped = 0;
    for (double v : sample.values)
        if (v < lo || v > hi) ++clipped;
    return static_cast<double>(clipped) / static_cast<double>(sample.values.size());
}

}  // namespace wishart
