/*
Copyright 2026 the cvcollect authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef CVCOLLECT_METRICS_HPP
#define CVCOLLECT_METRICS_HPP

#include <array>
#include <functional>
#include <vector>

#include "cvcollect/types.hpp"

namespace cvc {

// Fixed equirectangular conversion, chosen so a 1e-4 degree offset is 11.1 m.
// No cos(latitude) correction; all data of interest sits near one latitude.
constexpr double kMetersPerDegree = 111111.0;

struct SeriesSummary {
    double median = 0.0;
    double linf = 0.0;
};

SeriesSummary summarize(const std::vector<double>& series);

// Per-sample absolute speed error |v_t - v~_t| (dimension 1).
std::vector<double> speed_error(const Trip& original, const Trip& approx);

// Per-sample Euclidean trajectory error in meters (dimensions 2 and 3,
// degrees converted at kMetersPerDegree on both axes).
std::vector<double> trajectory_error(const Trip& original, const Trip& approx);

struct RelativeL2 {
    double value = 0.0;
    bool defined = true;  // false when the original series has zero norm
};

RelativeL2 relative_l2(const std::vector<double>& original, const std::vector<double>& approx);

// One row of the 16-scenario threshold sweep.
struct ScenarioRow {
    int scenario = 0;           // 1-based
    double eps_speed = 0.0;     // m/s
    double eps_coord = 0.0;     // degrees, applied to both latitude and longitude
    double mean_ratio = 0.0;    // mean over trips of per-trip collection ratios
    std::vector<std::size_t> ratio_histogram;  // 100 bins of width 0.01 over [0,1]
    std::array<double, 24> ratio_by_hour{};    // mean ratio per hour of day
    std::array<std::size_t, 24> trips_by_hour{};
};

struct ScenarioTable {
    std::vector<ScenarioRow> rows;
};

// The threshold grid: eps_speed in {0.5,1,1.5,2} m/s crossed with
// eps_coord in {0.5,1,1.5,2}x1e-4 degrees, coordinate thresholds outermost.
std::vector<std::pair<double, double>> scenario_grid();

// Runs the linear-filter codec on every trip under each of the 16 scenarios.
ScenarioTable sweep_scenarios(const std::vector<Trip>& corpus, int max_segment_length,
                              int jobs = 1);

}  // namespace cvc

#endif
