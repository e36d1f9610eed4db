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

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "wishart/extreme_densities.hpp"

namespace wishart {

inline const char* extreme_name(Extreme e) {
    return e == Extreme::largest ? "largest" : "smallest";
}

/// CSV with header "lambda,pdf,cdf"; 17 significant digits per value so a
/// round trip through the file is lossless for doubles.
void write_curve_csv(const DensityCurve& curve, std::ostream& os);

/// Parse a curve CSV back; validates header, column count, strictly
/// increasing grid, nonnegative pdf and nondecreasing cdf.
DensityCurve read_curve_csv(std::istream& is, Extreme which, const ModelParams& p);

/// JSON object with params, grid, pdf, cdf, warnings and cdf_total.
nlohmann::ordered_json curve_to_json(const DensityCurve& curve);

/// Grid specification "min:max:points", or "auto" (empty optional).
struct GridSpec {
    double min = 0.0;
    double max = 0.0;
    int points = 0;
};
std::optional<GridSpec> parse_grid_spec(const std::string& text);

/// points equally spaced values covering [lo, hi].
std::vector<double> linspace(double lo, double hi, int points);

}  // namespace wishart
