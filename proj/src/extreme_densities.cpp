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

#include "wishart/extreme_densities.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

#include "wishart/special_functions.hpp"

namespace wishart {

namespace {

// All kernel entries are computed in normalized units: the full entry is
//   b_{i,j} = (2 rho)^{a_i + a_j} Gamma(a_i) Gamma(a_j) * J(a_i, a_j)
//   s_i     = (2 rho)^{a_i} Gamma(a_i) * S(a_i)
// with |J| <= 2 and S in [0, 1]. The per-row factors
// d_i = (2 rho)^{a_i} Gamma(a_i) are diagonal congruence factors and enter
// the Pfaffian through the matrix log_scale (Pf(DAD) = det(D) Pf(A)), so
// nothing overflows even at a_i of several hundred.

double log_row_factor(double a, double rho) {
    return a * std::log(2.0 * rho) + log_gamma(a);
}

// Regularized gamma weight u^{a-1} e^{-u} / Gamma(a), assembled in log space.
double gamma_weight(double u, double a, double log_gamma_a) {
    if (u <= 0.0) return a == 1.0 ? std::exp(-log_gamma_a) : 0.0;
    const double power = a == 1.0 ? 0.0 : (a - 1.0) * std::log(u);
    return std::exp(power - u - log_gamma_a);
}

// J(a_row, a_col): the pairwise signed double integral with all gamma and
// (2 rho)^a factors removed. a_row indexes the inner (sign-split) variable.
double normalized_pair_integral(Extreme which, double a_row, double a_col,
                                double c, const QuadSpec& spec) {
    const double lg_col = log_gamma(a_col);
    if (which == Extreme::largest) {
        if (c == 0.0) return 0.0;
        const double pc = reg_lower_gamma(a_row, c);
        auto f = [&](double u) {
            const double g = gamma_weight(u, a_col, lg_col);
            if (g == 0.0) return 0.0;
            return g * (2.0 * reg_lower_gamma(a_row, u) - pc);
        };
        return integrate_finite(f, 0.0, c, spec).value;
    }
    const double qc = reg_upper_gamma(a_row, c);
    auto f = [&](double u) {
        const double g = gamma_weight(u, a_col, lg_col);
        if (g == 0.0) return 0.0;
        return g * (qc - 2.0 * reg_upper_gamma(a_row, u));
    };
    return integrate_semi_infinite(f, c, spec).value;
}

// S(a): the augmentation entry without its d factor.
double normalized_aug(Extreme which, double a, double c) {
    return which == Extreme::largest ? reg_lower_gamma(a, c) : reg_upper_gamma(a, c);
}

// Shared per-evaluation cache of the pair integrals. The kernel exponents
// r_{n,i} of every expansion term n are drawn from {0, .., K-1}, so one
// K x K table serves all K skew matrices at a grid point.
struct KernelTable {
    double c = 0.0;
    std::vector<double> a;
    std::vector<double> log_d;
    Eigen::MatrixXd pair;
    std::vector<double> aug;
};

KernelTable build_kernel_table(Extreme which, double lambda, const ModelParams& p,
                               const QuadSpec& spec) {
    KernelTable t;
    t.c = lambda / (2.0 * p.rho);
    const double base = 0.5 * (p.M - p.K + 1);
    t.a.resize(p.K);
    t.log_d.resize(p.K);
    for (int q = 0; q < p.K; ++q) {
        t.a[q] = q + base;
        t.log_d[q] = log_row_factor(t.a[q], p.rho);
    }
    if (p.K >= 3) {
        t.pair = Eigen::MatrixXd::Zero(p.K, p.K);
        for (int q = 0; q < p.K; ++q)
            for (int r = q + 1; r < p.K; ++r) {
                const double v = normalized_pair_integral(which, t.a[q], t.a[r], t.c, spec);
                t.pair(q, r) = v;
                t.pair(r, q) = -v;
            }
    }
    if (p.K % 2 == 0) {
        t.aug.resize(p.K);
        for (int q = 0; q < p.K; ++q) t.aug[q] = normalized_aug(which, t.a[q], t.c);
    }
    return t;
}

SkewMatrix assemble_from_table(const KernelTable& t, int n, const ModelParams& p,
                               AugConvention convention) {
    const int m0 = p.K - 1;
    const bool augment = m0 % 2 != 0;
    int order = m0;
    if (augment) order += convention == AugConvention::single_column ? 1 : 2;

    Eigen::MatrixXd entries = Eigen::MatrixXd::Zero(order, order);
    std::vector<int> expo(m0);
    for (int i = 1; i <= m0; ++i) expo[i - 1] = exponent_r(n, i, p.K);

    for (int i = 0; i < m0; ++i)
        for (int j = i + 1; j < m0; ++j) {
            const double v = t.pair(expo[i], expo[j]);
            entries(i, j) = v;
            entries(j, i) = -v;
        }
    if (augment) {
        if (convention == AugConvention::single_column) {
            for (int i = 0; i < m0; ++i) {
                entries(i, m0) = t.aug[expo[i]];
                entries(m0, i) = -t.aug[expo[i]];
            }
        } else {
            // Literal two-row augmentation: a ones column plus the integral
            // column. The order comes out odd, so the Pfaffian vanishes
            // identically; kept only to document why this reading fails.
            for (int i = 0; i < m0; ++i) {
                entries(i, m0) = 1.0;
                entries(m0, i) = -1.0;
                entries(i, m0 + 1) = t.aug[expo[i]];
                entries(m0 + 1, i) = -t.aug[expo[i]];
            }
        }
    }

    double sum_log_d = 0.0;
    for (int i = 0; i < m0; ++i) sum_log_d += t.log_d[expo[i]];
    const double log_scale = order > 0 ? 2.0 * sum_log_d / order : 0.0;
    return SkewMatrix(std::move(entries), log_scale);
}

// Raw alternating Pfaffian sum; differs from the density by a global sign
// that depends only on (K, M, which).
SignedLogValue raw_signed_pdf(Extreme which, double lambda, const ModelParams& p,
                              const QuadSpec& spec) {
    p.validate();
    if (lambda < 0.0) throw std::domain_error("extreme pdf: lambda must be >= 0");

    if (which == Extreme::largest && lambda == 0.0 && p.K >= 2)
        return SignedLogValue::zero();

    std::vector<SignedLogValue> terms;
    terms.reserve(p.K);
    KernelTable table;
    if (p.K >= 2) table = build_kernel_table(which, lambda, p, spec);

    for (int n = 1; n <= p.K; ++n) {
        SignedLogValue term = pow_log(lambda, p.K - n + p.half_power());
        if (term.is_zero()) continue;
        term.log_mag -= lambda / (2.0 * p.rho);

        if (p.K >= 2) {
            term *= pfaffian(assemble_from_table(table, n, p, AugConvention::single_column));
            if (term.is_zero()) continue;
        }
        const bool negative =
            which == Extreme::largest ? n % 2 == 0 : (n + p.K) % 2 != 0;
        if (negative) term = term.negated();
        terms.push_back(term);
    }

    return signed_log_sum(terms) * log_norm_constant(p);
}

// The derivation stacks three ordering conventions (descending eigenvalues,
// ascending integration variables, Pfaffian row order); rather than track
// the resulting permutation parity symbolically, the overall sign is fixed
// once per (K, M, which) by probing the raw sum where the density is
// provably positive. It is independent of rho by scale invariance.
int orientation_sign(Extreme which, const ModelParams& p, const QuadSpec& spec) {
    if (p.K == 1) return 1;

    static std::mutex mutex;
    static std::map<std::tuple<int, int, int>, int> cache;
    const auto key = std::make_tuple(p.K, p.M, which == Extreme::largest ? 0 : 1);

    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    const double sm = std::sqrt(static_cast<double>(p.M));
    const double sk = std::sqrt(static_cast<double>(p.K));
    const double anchor = which == Extreme::largest
                              ? p.rho * (sm + sk) * (sm + sk)
                              : p.rho * (sm - sk) * (sm - sk);
    const double factors[] = {1.0, 0.8, 1.25, 0.55, 1.6};

    int sign = 1;
    double best_log = -std::numeric_limits<double>::infinity();
    for (double f : factors) {
        const SignedLogValue raw = raw_signed_pdf(which, f * anchor, p, spec);
        if (raw.sign != 0 && raw.log_mag > best_log) {
            best_log = raw.log_mag;
            sign = raw.sign;
        }
    }
    cache.emplace(key, sign);
    return sign;
}

double oriented_pdf(Extreme which, double lambda, const ModelParams& p,
                    const QuadSpec& spec) {
    const SignedLogValue raw = raw_signed_pdf(which, lambda, p, spec);
    if (raw.sign == 0) return 0.0;
    return SignedLogValue::from_parts(raw.sign * orientation_sign(which, p, spec),
                                      raw.log_mag)
        .value();
}

void check_kernel_indices(int n, int i, int K) {
    if (n < 1 || n > K) throw std::out_of_range("kernel entry: n out of [1, K]");
    if (i < 1 || i > K - 1) throw std::out_of_range("kernel entry: i out of [1, K-1]");
}

SignedLogValue kernel_entry(Extreme which, int n, int i, int j, double lambda,
                            const ModelParams& p, const QuadSpec& spec) {
    p.validate();
    check_kernel_indices(n, i, p.K);
    check_kernel_indices(n, j, p.K);
    if (lambda < 0.0) throw std::domain_error("kernel entry: lambda must be >= 0");
    if (i == j) return SignedLogValue::zero();

    const double base = 0.5 * (p.M - p.K + 1);
    const double a_i = exponent_r(n, i, p.K) + base;
    const double a_j = exponent_r(n, j, p.K) + base;
    const double c = lambda / (2.0 * p.rho);
    const double value = normalized_pair_integral(which, a_i, a_j, c, spec);
    return SignedLogValue::from_value(value) *
           SignedLogValue::from_parts(1, log_row_factor(a_i, p.rho) +
                                             log_row_factor(a_j, p.rho));
}

SignedLogValue aug_entry(Extreme which, int n, int i, double lambda,
                         const ModelParams& p) {
    p.validate();
    check_kernel_indices(n, i, p.K);
    if (lambda < 0.0) throw std::domain_error("aug entry: lambda must be >= 0");
    const double a = exponent_r(n, i, p.K) + 0.5 * (p.M - p.K + 1);
    const double s = normalized_aug(which, a, lambda / (2.0 * p.rho));
    if (s == 0.0) return SignedLogValue::zero();
    return SignedLogValue::from_parts(1, log_row_factor(a, p.rho) + std::log(s));
}

SkewMatrix assemble_skew(Extreme which, int n, double lambda, const ModelParams& p,
                         const QuadSpec& spec, AugConvention convention) {
    p.validate();
    if (n < 1 || n > p.K) throw std::out_of_range("assemble_skew: n out of [1, K]");
    if (lambda < 0.0) throw std::domain_error("assemble_skew: lambda must be >= 0");
    const KernelTable table = build_kernel_table(which, lambda, p, spec);
    return assemble_from_table(table, n, p, convention);
}

}  // namespace

SignedLogValue kernel_entry_largest(int n, int i, int j, double lambda1,
                                    const ModelParams& p, const QuadSpec& spec) {
    return kernel_entry(Extreme::largest, n, i, j, lambda1, p, spec);
}

SignedLogValue aug_entry_largest(int n, int i, double lambda1, const ModelParams& p) {
    return aug_entry(Extreme::largest, n, i, lambda1, p);
}

SkewMatrix assemble_skew_largest(int n, double lambda1, const ModelParams& p,
                                 const QuadSpec& spec, AugConvention convention) {
    return assemble_skew(Extreme::largest, n, lambda1, p, spec, convention);
}

double pdf_largest(double lambda1, const ModelParams& p, const QuadSpec& spec) {
    return oriented_pdf(Extreme::largest, lambda1, p, spec);
}

SignedLogValue kernel_entry_smallest(int n, int i, int j, double lambdaK,
                                     const ModelParams& p, const QuadSpec& spec) {
    return kernel_entry(Extreme::smallest, n, i, j, lambdaK, p, spec);
}

SignedLogValue aug_entry_smallest(int n, int i, double lambdaK, const ModelParams& p) {
    return aug_entry(Extreme::smallest, n, i, lambdaK, p);
}

SkewMatrix assemble_skew_smallest(int n, double lambdaK, const ModelParams& p,
                                  const QuadSpec& spec, AugConvention convention) {
    return assemble_skew(Extreme::smallest, n, lambdaK, p, spec, convention);
}

double pdf_smallest(double lambdaK, const ModelParams& p, const QuadSpec& spec) {
    return oriented_pdf(Extreme::smallest, lambdaK, p, spec);
}

double auto_grid_upper(const ModelParams& p, double tail_mass) {
    p.validate();
    if (!(tail_mass > 0.0 && tail_mass < 0.5))
        throw std::invalid_argument("auto_grid_upper: tail_mass must be in (0, 0.5)");

    // The whole spectrum is bounded by tr(W) = rho * chisq_{KM}, so the
    // (1 - tail_mass) quantile of that trace bounds any eigenvalue's grid.
    const double nu = 0.5 * p.K * p.M;
    double t;
    if (nu <= 500.0) {
        double hi = nu + 10.0 * std::sqrt(nu) + 30.0;
        while (reg_upper_gamma(nu, hi) > tail_mass) hi *= 1.5;
        double lo = 0.0;
        for (int iter = 0; iter < 200 && (hi - lo) > 1e-9 * hi; ++iter) {
            const double mid = 0.5 * (lo + hi);
            (reg_upper_gamma(nu, mid) > tail_mass ? lo : hi) = mid;
        }
        t = hi * 1.02;
    } else {
        // Wilson-Hilferty quantile; the exact tail is too deep in the
        // series/continued-fraction crossover at this nu.
        double zlo = 0.0, zhi = 50.0;
        for (int iter = 0; iter < 200; ++iter) {
            const double mid = 0.5 * (zlo + zhi);
            (0.5 * std::erfc(mid / std::numbers::sqrt2) > tail_mass ? zlo : zhi) = mid;
        }
        const double z = 0.5 * (zlo + zhi);
        const double h = 2.0 / (9.0 * nu);
        const double cube = 1.0 - h + z * std::sqrt(h);
        t = nu * cube * cube * cube * 1.1;
    }
    return 2.0 * p.rho * t;
}

DensityCurve evaluate_curve(Extreme which, std::span<const double> grid,
                            const ModelParams& p, const QuadSpec& spec,
                            int n_threads) {
    p.validate();
    if (grid.empty()) throw std::invalid_argument("evaluate_curve: empty grid");
    if (!(grid[0] >= 0.0)) throw std::invalid_argument("evaluate_curve: grid must start >= 0");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1]))
            throw std::invalid_argument("evaluate_curve: grid must be strictly increasing");

    QuadSpec effective = spec;
    if (p.K > 20 && effective.rel_tol < 1e-8) effective.rel_tol = 1e-8;

    DensityCurve curve;
    curve.which = which;
    curve.params = p;
    curve.grid.assign(grid.begin(), grid.end());
    curve.pdf.assign(grid.size(), 0.0);
    curve.valid.assign(grid.size(), 1);
    std::vector<std::string> point_errors(grid.size());

    orientation_sign(which, p, effective);  // resolve once, outside the fan-out

    auto eval_point = [&](std::size_t i) {
        try {
            curve.pdf[i] = oriented_pdf(which, curve.grid[i], p, effective);
        } catch (const std::exception& e) {
            curve.valid[i] = 0;
            curve.pdf[i] = 0.0;
            point_errors[i] = e.what();
        }
    };

    const int threads = std::max(1, std::min<int>(n_threads, static_cast<int>(grid.size())));
    if (threads == 1) {
        for (std::size_t i = 0; i < grid.size(); ++i) eval_point(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < grid.size(); i = next++) eval_point(i);
            });
        for (auto& th : pool) th.join();
    }

    for (std::size_t i = 0; i < grid.size(); ++i)
        if (!curve.valid[i])
            curve.warnings.push_back("point " + std::to_string(i) + " (lambda=" +
                                     std::to_string(curve.grid[i]) +
                                     ") failed: " + point_errors[i]);

    // Negative values beyond quadrature noise indicate trouble; tiny ones
    // are clamped so the cdf stays monotone.
    double peak = 0.0;
    for (double v : curve.pdf) peak = std::max(peak, v);
    for (std::size_t i = 0; i < curve.pdf.size(); ++i) {
        if (curve.pdf[i] < 0.0) {
            if (curve.pdf[i] < -1e-8 * peak)
                curve.warnings.push_back("pdf at lambda=" + std::to_string(curve.grid[i]) +
                                         " is negative beyond noise: " +
                                         std::to_string(curve.pdf[i]));
            curve.pdf[i] = 0.0;
        }
    }

    curve.cdf.assign(grid.size(), 0.0);
    for (std::size_t i = 1; i < grid.size(); ++i)
        curve.cdf[i] = curve.cdf[i - 1] + 0.5 * (curve.pdf[i] + curve.pdf[i - 1]) *
                                              (curve.grid[i] - curve.grid[i - 1]);
    curve.cdf_total = curve.cdf.back();
    if (std::abs(curve.cdf_total - 1.0) > 1e-3)
        curve.warnings.push_back("normalization: trapezoidal mass " +
                                 std::to_string(curve.cdf_total) +
                                 " deviates from 1 by more than 1e-3");
    return curve;
}

}  // namespace wishart
