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

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <thread>

#include "wishart/curve_io.hpp"
#include "wishart/extreme_densities.hpp"
#include "wishart/validation.hpp"

namespace {

using nlohmann::ordered_json;
using namespace wishart;

constexpr int kExitOk = 0;
constexpr int kExitValidationFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kSchemaVersion = 1;

int resolve_threads() {
    int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("WISHART_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || cap < 1)
            throw std::invalid_argument("WISHART_THREADS must be an integer >= 1");
        threads = std::min<long>(threads, cap);
    }
    return threads;
}

std::vector<Extreme> expand_which(const std::string& which) {
    if (which == "largest") return {Extreme::largest};
    if (which == "smallest") return {Extreme::smallest};
    if (which == "both") return {Extreme::largest, Extreme::smallest};
    throw std::invalid_argument("--which must be largest, smallest or both");
}

std::vector<double> resolve_grid(const std::string& grid_text, const ModelParams& p,
                                 int auto_points) {
    if (auto spec = parse_grid_spec(grid_text))
        return linspace(spec->min, spec->max, spec->points);
    return linspace(0.0, auto_grid_upper(p), auto_points);
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << contents;
}

std::string strip_known_extension(std::string base) {
    for (const char* ext : {".csv", ".json"})
        if (base.size() > std::strlen(ext) && base.ends_with(ext))
            return base.substr(0, base.size() - std::strlen(ext));
    return base;
}

struct PdfOptions {
    int K = 1;
    std::vector<int> Ms{};
    double rho = 1.0;
    std::string rho_mode = "fixed";
    std::string which = "both";
    std::string grid = "auto";
    int points = 400;
    std::string output = "curve";
    std::string format = "csv";
};

double rho_for(const PdfOptions& opt, int m) {
    if (opt.rho_mode == "inverse-M") return 1.0 / m;
    if (opt.rho_mode == "fixed") return opt.rho;
    throw std::invalid_argument("--rho-mode must be fixed or inverse-M");
}

int run_pdf(const PdfOptions& opt) {
    const auto whiches = expand_which(opt.which);
    const int threads = resolve_threads();
    const bool single = whiches.size() == 1 && opt.Ms.size() == 1;

    for (int m : opt.Ms) {
        ModelParams p{opt.K, m, rho_for(opt, m)};
        p.validate();
        const auto grid = resolve_grid(opt.grid, p, opt.points);
        for (Extreme which : whiches) {
            DensityCurve curve = evaluate_curve(which, grid, p, QuadSpec{}, threads);
            for (const auto& w : curve.warnings) std::cerr << "warning: " << w << '\n';

            std::string path = opt.output;
            if (!single)
                path = strip_known_extension(opt.output) + "_" + extreme_name(which) +
                       "_M" + std::to_string(m);
            if (!path.ends_with("." + opt.format)) path += "." + opt.format;

            if (opt.format == "csv") {
                std::ostringstream os;
                write_curve_csv(curve, os);
                write_text_file(path, os.str());
            } else if (opt.format == "json") {
                ordered_json j = curve_to_json(curve);
                j["schema_version"] = kSchemaVersion;
                write_text_file(path, j.dump(2) + "\n");
            } else {
                throw std::invalid_argument("--format must be csv or json");
            }
            std::cerr << "wrote " << path << '\n';
        }
    }
    return kExitOk;
}

struct ValidateOptions {
    int K = 1;
    int M = 2;
    double rho = 1.0;
    std::string which = "both";
    std::string grid = "auto";
    int points = 800;
    long samples = 10000;
    std::uint64_t seed = 42;
    double ks_threshold = 0.02;
    std::string output;
};

// Largest gap between the sample histogram and the analytic pdf, measured
// at bin centers.
double histogram_deviation(const EmpiricalSample& sample, const DensityCurve& curve) {
    const long n = sample.n_samples;
    const int bins = static_cast<int>(std::clamp<long>(
        std::lround(std::sqrt(static_cast<double>(n))), 10, 100));
    const double lo = sample.values.front(), hi = sample.values.back();
    if (!(hi > lo)) return 0.0;
    const double width = (hi - lo) / bins;

    std::vector<long> counts(static_cast<std::size_t>(bins), 0);
    for (double v : sample.values) {
        int b = static_cast<int>((v - lo) / width);
        b = std::clamp(b, 0, bins - 1);
        ++counts[static_cast<std::size_t>(b)];
    }

    double dev = 0.0;
    for (int b = 0; b < bins; ++b) {
        const double center = lo + (b + 0.5) * width;
        const double density =
            static_cast<double>(counts[static_cast<std::size_t>(b)]) / (n * width);
        // interpolate pdf from the curve
        const auto& g = curve.grid;
        double pdf = 0.0;
        if (center >= g.front() && center <= g.back()) {
            const auto it = std::upper_bound(g.begin(), g.end(), center);
            const std::size_t hi_i =
                std::min<std::size_t>(static_cast<std::size_t>(it - g.begin()), g.size() - 1);
            const std::size_t lo_i = hi_i == 0 ? 0 : hi_i - 1;
            const double span = g[hi_i] - g[lo_i];
            const double t = span > 0.0 ? (center - g[lo_i]) / span : 0.0;
            pdf = curve.pdf[lo_i] + t * (curve.pdf[hi_i] - curve.pdf[lo_i]);
        }
        dev = std::max(dev, std::abs(density - pdf));
    }
    return dev;
}

int run_validate(const ValidateOptions& opt) {
    const auto start = std::chrono::steady_clock::now();
    ModelParams p{opt.K, opt.M, opt.rho};
    p.validate();
    if (opt.samples < 1) throw std::invalid_argument("--samples must be >= 1");

    const auto whiches = expand_which(opt.which);
    const int threads = resolve_threads();
    const auto grid = resolve_grid(opt.grid, p, opt.points);

    ordered_json grids, pdfs, cdfs, ks;
    std::vector<std::string> warnings;
    bool all_passed = true;

    for (Extreme which : whiches) {
        DensityCurve curve = evaluate_curve(which, grid, p, QuadSpec{}, threads);
        EmpiricalSample sample = sample_extreme_eigs(p, opt.samples, opt.seed, which, threads);

        const double stat = ks_statistic(sample, curve);
        const double null_bound = 1.63 / std::sqrt(static_cast<double>(opt.samples));
        const bool passed = stat < opt.ks_threshold;
        // A failure that the 99% KS null band can explain points at the
        // sample size, not the curve.
        const bool insufficient = !passed && stat < null_bound;
        all_passed = all_passed && passed;

        const char* name = extreme_name(which);
        grids[name] = curve.grid;
        pdfs[name] = curve.pdf;
        cdfs[name] = curve.cdf;
        ks[name] = {{"statistic", stat},
                    {"threshold", opt.ks_threshold},
                    {"null_bound_99", null_bound},
                    {"histogram_deviation", histogram_deviation(sample, curve)},
                    {"clipped_fraction", clipped_fraction(sample, curve)},
                    {"retried_draws", sample.retried_draws},
                    {"insufficient_samples", insufficient},
                    {"passed", passed}};
        for (const auto& w : curve.warnings) warnings.push_back(std::string(name) + ": " + w);
    }

    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    ordered_json report;
    report["params"] = {{"K", p.K}, {"M", p.M}, {"rho", p.rho}};
    report["which"] = opt.which;
    report["grid"] = grids;
    report["pdf"] = pdfs;
    report["cdf"] = cdfs;
    report["ks"] = ks;
    report["warnings"] = warnings;
    report["seed"] = opt.seed;
    report["samples"] = opt.samples;
    report["runtime_ms"] = elapsed;
    report["schema_version"] = kSchemaVersion;

    const std::string text = report.dump(2) + "\n";
    if (opt.output.empty())
        std::cout << text;
    else
        write_text_file(opt.output, text);
    return all_passed ? kExitOk : kExitValidationFailed;
}

struct SweepOptions {
    int K = 1;
    std::vector<int> Ms{};
    double rho = 1.0;
    std::string rho_mode = "fixed";
    std::string which = "largest";
    std::string grid = "auto";
    int points = 400;
    std::string output = "sweep";
    std::string format = "csv";
};

int run_sweep(const SweepOptions& opt) {
    if (opt.Ms.empty()) throw std::invalid_argument("--M list must not be empty");
    const auto whiches = expand_which(opt.which);
    const int threads = resolve_threads();

    PdfOptions rho_opt;
    rho_opt.rho = opt.rho;
    rho_opt.rho_mode = opt.rho_mode;

    std::vector<DensityCurve> curves;
    for (int m : opt.Ms) {
        ModelParams p{opt.K, m, rho_for(rho_opt, m)};
        p.validate();
        const auto grid = resolve_grid(opt.grid, p, opt.points);
        for (Extreme which : whiches) {
            curves.push_back(evaluate_curve(which, grid, p, QuadSpec{}, threads));
            for (const auto& w : curves.back().warnings)
                std::cerr << "warning: M=" << m << " " << extreme_name(which) << ": " << w
                          << '\n';
        }
    }

    std::string path = opt.output;
    if (!path.ends_with("." + opt.format)) path = strip_known_extension(path) + "." + opt.format;

    if (opt.format == "csv") {
        std::ostringstream os;
        os << "M,which,lambda,pdf,cdf\n";
        char buf[128];
        for (const auto& curve : curves)
            for (std::size_t i = 0; i < curve.grid.size(); ++i) {
                std::snprintf(buf, sizeof buf, "%d,%s,%.17g,%.17g,%.17g\n", curve.params.M,
                              extreme_name(curve.which), curve.grid[i], curve.pdf[i],
                              curve.cdf[i]);
                os << buf;
            }
        write_text_file(path, os.str());
    } else if (opt.format == "json") {
        ordered_json j;
        j["schema_version"] = kSchemaVersion;
        j["curves"] = ordered_json::array();
        for (const auto& curve : curves) j["curves"].push_back(curve_to_json(curve));
        write_text_file(path, j.dump(2) + "\n");
    } else {
        throw std::invalid_argument("--format must be csv or json");
    }
    std::cerr << "wrote " << path << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact extreme-eigenvalue densities of real Wishart matrices"};
    app.require_subcommand(1);

    PdfOptions pdf_opt;
    auto* pdf_cmd = app.add_subcommand("pdf", "Evaluate a density curve to CSV/JSON");
    pdf_cmd->add_option("--K", pdf_opt.K, "Matrix order K")->required();
    pdf_cmd->add_option("--M", pdf_opt.Ms, "Degrees of freedom (one or more, comma separated)")
        ->required()
        ->delimiter(',');
    pdf_cmd->add_option("--rho", pdf_opt.rho, "Scale of the covariance rho*I");
    pdf_cmd->add_option("--rho-mode", pdf_opt.rho_mode, "fixed | inverse-M");
    pdf_cmd->add_option("--which", pdf_opt.which, "largest | smallest | both");
    pdf_cmd->add_option("--grid", pdf_opt.grid, "min:max:points or auto");
    pdf_cmd->add_option("--points", pdf_opt.points, "Points for the auto grid");
    pdf_cmd->add_option("--output,-o", pdf_opt.output, "Output path or basename");
    pdf_cmd->add_option("--format", pdf_opt.format, "csv | json");

    ValidateOptions val_opt;
    auto* val_cmd = app.add_subcommand("validate", "Monte Carlo agreement report (JSON)");
    val_cmd->add_option("--K", val_opt.K, "Matrix order K")->required();
    val_cmd->add_option("--M", val_opt.M, "Degrees of freedom")->required();
    val_cmd->add_option("--rho", val_opt.rho, "Scale of the covariance rho*I");
    val_cmd->add_option("--which", val_opt.which, "largest | smallest | both");
    val_cmd->add_option("--grid", val_opt.grid, "min:max:points or auto");
    val_cmd->add_option("--points", val_opt.points, "Points for the auto grid");
    val_cmd->add_option("--samples", val_opt.samples, "Number of Monte Carlo draws");
    val_cmd->add_option("--seed", val_opt.seed, "RNG seed");
    val_cmd->add_option("--ks-threshold", val_opt.ks_threshold, "Pass threshold for KS");
    val_cmd->add_option("--output,-o", val_opt.output, "Report path (stdout if omitted)");

    SweepOptions sweep_opt;
    auto* sweep_cmd = app.add_subcommand("sweep", "Multi-M curve table");
    sweep_cmd->add_option("--K", sweep_opt.K, "Matrix order K")->required();
    sweep_cmd->add_option("--M", sweep_opt.Ms, "Degrees of freedom list")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--rho", sweep_opt.rho, "Scale (with --rho-mode fixed)");
    sweep_cmd->add_option("--rho-mode", sweep_opt.rho_mode, "fixed | inverse-M");
    sweep_cmd->add_option("--which", sweep_opt.which, "largest | smallest | both");
    sweep_cmd->add_option("--grid", sweep_opt.grid, "min:max:points or auto");
    sweep_cmd->add_option("--points", sweep_opt.points, "Points for the auto grid");
    sweep_cmd->add_option("--output,-o", sweep_opt.output, "Output path or basename");
    sweep_cmd->add_option("--format", sweep_opt.format, "csv | json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (pdf_cmd->parsed()) return run_pdf(pdf_opt);
        if (val_cmd->parsed()) return run_validate(val_opt);
        return run_sweep(sweep_opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
}
