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

#include "cvcollect/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "cvcollect/mpla.hpp"

namespace cvc {

SeriesSummary summarize(const std::vector<double>& series) {
    if (series.empty()) return {};
    std::vector<double> sorted = series;
    std::sort(sorted.begin(), sorted.end());
    SeriesSummary s;
    const std::size_t n = sorted.size();
    s.median = (n % 2 == 1) ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    s.linf = sorted.back();
    return s;
}

std::vector<double> speed_error(const Trip& original, const Trip& approx) {
    if (original.size() != approx.size())
        throw std::invalid_argument("speed_error: length mismatch");
    std::vector<double> e(original.size());
    for (std::size_t t = 0; t < e.size(); ++t)
        e[t] = std::abs(original.samples[t].values[0] - approx.samples[t].values[0]);
    return e;
}

std::vector<double> trajectory_error(const Trip& original, const Trip& approx) {
    if (original.size() != approx.size())
        throw std::invalid_argument("trajectory_error: length mismatch");
    if (original.dim() < 3) throw std::invalid_argument("trajectory_error: needs lat/lon dims");
    std::vector<double> e(original.size());
    for (std::size_t t = 0; t < e.size(); ++t) {
        const double dlat =
            (original.samples[t].values[1] - approx.samples[t].values[1]) * kMetersPerDegree;
        const double dlon =
            (original.samples[t].values[2] - approx.samples[t].values[2]) * kMetersPerDegree;
        e[t] = std::hypot(dlat, dlon);
    }
    return e;
}

RelativeL2 relative_l2(const std::vector<double>& original, const std::vector<double>& approx) {
    if (original.size() != approx.size())
        throw std::invalid_argument("relative_l2: length mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < original.size(); ++i) {
        const double d = original[i] - approx[i];
        num += d * d;
        den += original[i] * original[i];
    }
    RelativeL2 r;
    if (den == 0.0) {
        r.defined = false;
        return r;
    }
    r.value = std::sqrt(num / den);
    return r;
}

std::vector<std::pair<double, double>> scenario_grid() {
    const double speeds[] = {0.5, 1.0, 1.5, 2.0};
    const double coords[] = {0.5e-4, 1.0e-4, 1.5e-4, 2.0e-4};
    std::vector<std::pair<double, double>> grid;
    for (double c : coords)
        for (double s : speeds) grid.emplace_back(s, c);
    return grid;
}

ScenarioTable sweep_scenarios(const std::vector<Trip>& corpus, int max_segment_length, int jobs) {
    if (corpus.empty()) throw std::invalid_argument("sweep_scenarios: empty corpus");
    const auto grid = scenario_grid();

    ScenarioTable table;
    table.rows.resize(grid.size());

    // per (scenario, trip) collection ratios; filled in parallel, merged in order
    std::vector<std::vector<double>> ratios(grid.size(),
                                            std::vector<double>(corpus.size(), 0.0));

    auto work = [&](std::size_t trip_begin, std::size_t trip_end) {
        for (std::size_t ti = trip_begin; ti < trip_end; ++ti) {
            for (std::size_t si = 0; si < grid.size(); ++si) {
                ThresholdConfig cfg;
                cfg.epsilons = {grid[si].first, grid[si].second, grid[si].second};
                cfg.max_segment_length = max_segment_length;
                Transmission tx = mpla_encode(corpus[ti], cfg);
                ratios[si][ti] = tx.collection_ratio(corpus[ti].size());
            }
        }
    };

    const int nthreads = std::max(1, jobs);
    if (nthreads == 1 || corpus.size() < 2) {
        work(0, corpus.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (corpus.size() + nthreads - 1) / nthreads;
        for (int w = 0; w < nthreads; ++w) {
            const std::size_t b = std::min(corpus.size(), static_cast<std::size_t>(w) * chunk);
            const std::size_t e = std::min(corpus.size(), b + chunk);
            if (b < e) pool.emplace_back(work, b, e);
        }
        for (auto& th : pool) th.join();
    }

    for (std::size_t si = 0; si < grid.size(); ++si) {
        ScenarioRow& row = table.rows[si];
        row.scenario = static_cast<int>(si) + 1;
        row.eps_speed = grid[si].first;
        row.eps_coord = grid[si].second;
        row.ratio_histogram.assign(100, 0);

        double sum = 0.0;
        for (std::size_t ti = 0; ti < corpus.size(); ++ti) {
            const double r = ratios[si][ti];
            sum += r;
            const std::size_t bin = std::min<std::size_t>(99, static_cast<std::size_t>(r * 100.0));
            row.ratio_histogram[bin] += 1;

            const double start_s = to_seconds(corpus[ti].samples.front().t);
            const int hour =
                static_cast<int>(std::fmod(std::max(0.0, start_s), 86400.0) / 3600.0) % 24;
            row.ratio_by_hour[hour] += r;
            row.trips_by_hour[hour] += 1;
        }
        row.mean_ratio = sum / static_cast<double>(corpus.size());
        for (int h = 0; h < 24; ++h)
            if (row.trips_by_hour[h] > 0)
                row.ratio_by_hour[h] /= static_cast<double>(row.trips_by_hour[h]);
    }
    return table;
}

}  // namespace cvc
