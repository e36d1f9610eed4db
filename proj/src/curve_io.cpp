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

#include "wishart/curve_io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace wishart {

namespace {

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_curve_csv(const DensityCurve& curve, std::ostream& os) {
    os << "lambda,pdf,cdf\n";
    for (std::size_t i = 0; i < curve.grid.size(); ++i)
        os << fmt17(curve.grid[i]) << ',' << fmt17(curve.pdf[i]) << ','
           << fmt17(curve.cdf[i]) << '\n';
}

DensityCurve read_curve_csv(std::istream& is, Extreme which, const ModelParams& p) {
    DensityCurve curve;
    curve.which = which;
    curve.params = p;

    std::string line;
    if (!std::getline(is, line) || line != "lambda,pdf,cdf")
        throw std::invalid_argument("curve csv: missing 'lambda,pdf,cdf' header");

    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        double vals[3];
        char comma;
        if (!(row >> vals[0] >> comma >> vals[1] >> comma >> vals[2]))
            throw std::invalid_argument("curve csv: malformed row: " + line);
        curve.grid.push_back(vals[0]);
        curve.pdf.push_back(vals[1]);
        curve.cdf.push_back(vals[2]);
    }
    if (curve.grid.empty()) throw std::invalid_argument("curve csv: no data rows");

    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        if (i + 1 < curve.grid.size() && !(curve.grid[i] < curve.grid[i + 1]))
            throw std::invalid_argument("curve csv: grid not strictly increasing");
        if (curve.pdf[i] < 0.0) throw std::invalid_argument("curve csv: negative pdf");
        if (i > 0 && curve.cdf[i] < curve.cdf[i - 1] - 1e-12)
            throw std::invalid_argument("curve csv: cdf not nondecreasing");
    }
    curve.valid.assign(curve.grid.size(), 1);
    curve.cdf_total = curve.cdf.back();
    return curve;
}

nlohmann::ordered_json curve_to_json(const DensityCurve& curve) {
    nlohmann::ordered_json j;
    j["params"] = {{"K", curve.params.K}, {"M", curve.params.M}, {"rho", curve.params.rho}};
    j["which"] = extreme_name(curve.which);
    j["grid"] = curve.grid;
    j["pdf"] = curve.pdf;
    j["cdf"] = curve.cdf;
    j["cdf_total"] = curve.cdf_total;
    j["warnings"] = curve.warnings;
    return j;
}

std::optional<GridSpec> parse_grid_spec(const std::string& text) {
    if (text == "auto") return std::nullopt;
    GridSpec spec;
    char c1, c2;
    std::istringstream in(text);
    if (!(in >> spec.min >> c1 >> spec.max >> c2 >> spec.points) || c1 != ':' ||
        c2 != ':' || !in.eof())
        throw std::invalid_argument("grid spec must be 'min:max:points' or 'auto', got '" +
                                    text + "'");
    if (!(spec.min >= 0.0)) throw std::invalid_argument("grid spec: min must be >= 0");
    if (!(spec.max > spec.min)) throw std::invalid_argument("grid spec: max must exceed min");
    if (spec.points < 2) throw std::invalid_argument("grid spec: need at least 2 points");
    return spec;
}

std::vector<double> linspace(double lo, double hi, int points) {
    if (points < 2) throw std::invalid_argument("linspace: need at least 2 points");
    std::vector<double> out(static_cast<std::size_t>(points));
    const double step = (hi - lo) / (points - 1);
    for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = lo + step * i;
    out.back() = hi;
    return out;
}

}  // namespace wishart
