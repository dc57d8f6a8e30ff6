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

#include <cmath>
#include <vector>

#include "cvcollect/ingest.hpp"
#include "cvcollect/metrics.hpp"
#include "doctest.h"

using namespace cvc;

namespace {

Trip offset_trip(const Trip& base, double dv, double dlat, double dlon) {
    Trip out = base;
    for (Sample& s : out.samples) {
        s.values[0] += dv;
        s.values[1] += dlat;
        s.values[2] += dlon;
    }
    return out;
}

}  // namespace

TEST_CASE("speed error of identical trips is zero, of a constant offset is that offset") {
    Trip base = synth_trip(SynthKind::RandomWalk, 100, 1);
    SeriesSummary zero = summarize(speed_error(base, base));
    CHECK(zero.median == 0.0);
    CHECK(zero.linf == 0.0);

    SeriesSummary off = summarize(speed_error(base, offset_trip(base, 0.3, 0, 0)));
    CHECK(off.median == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(off.linf == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("a 1e-4 degree single-axis offset is 11.1 meters") {
    Trip base = synth_trip(SynthKind::Constant, 10, 1);
    std::vector<double> e = trajectory_error(base, offset_trip(base, 0, 1e-4, 0));
    for (double v : e) CHECK(v == doctest::Approx(11.1).epsilon(0.01));
}

TEST_CASE("a 1e-4 degree offset on both axes is 15.7 meters") {
    Trip base = synth_trip(SynthKind::Constant, 10, 1);
    std::vector<double> e = trajectory_error(base, offset_trip(base, 0, 1e-4, 1e-4));
    for (double v : e) CHECK(std::abs(v - 15.7) < 0.1);
}

TEST_CASE("trajectory error is symmetric in the two axes") {
    Trip base = synth_trip(SynthKind::Constant, 4, 1);
    std::vector<double> a = trajectory_error(base, offset_trip(base, 0, 3e-5, 7e-5));
    std::vector<double> b = trajectory_error(base, offset_trip(base, 0, 7e-5, 3e-5));
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]));
}

TEST_CASE("relative l2 matches its closed forms") {
    std::vector<double> x = {1.0, -2.0, 3.0, 0.5};
    std::vector<double> same = x, scaled = x, zero(x.size(), 0.0);
    for (double& v : scaled) v *= 1.1;
    CHECK(relative_l2(x, same).value == 0.0);
    CHECK(relative_l2(x, scaled).value == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(relative_l2(x, zero).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(relative_l2(zero, x).defined);
}

TEST_CASE("median of an even-length series averages the central pair") {
    SeriesSummary s = summarize({4.0, 1.0, 3.0, 2.0});
    CHECK(s.median == doctest::Approx(2.5));
    CHECK(s.linf == 4.0);
}

TEST_CASE("the scenario grid is the full 4x4 cross with coordinates outermost") {
    auto grid = scenario_grid();
    REQUIRE(grid.size() == 16);
    CHECK(grid[0] == std::pair<double, double>{0.5, 0.5e-4});
    CHECK(grid[3] == std::pair<double, double>{2.0, 0.5e-4});
    CHECK(grid[4] == std::pair<double, double>{0.5, 1.0e-4});
    CHECK(grid[15] == std::pair<double, double>{2.0, 2.0e-4});
}

TEST_CASE("a constant trip yields the same minimal ratio in all scenarios") {
    std::vector<Trip> corpus = {synth_trip(SynthKind::Constant, 100, 1)};
    ScenarioTable table = sweep_scenarios(corpus, 50);
    REQUIRE(table.rows.size() == 16);
    for (const ScenarioRow& row : table.rows)
        CHECK(row.mean_ratio == doctest::Approx(table.rows[0].mean_ratio).epsilon(1e-12));
}

TEST_CASE("element-wise looser scenarios never collect more") {
    std::vector<Trip> corpus;
    for (std::uint64_t s = 1; s <= 20; ++s)
        corpus.push_back(synth_trip(SynthKind::RandomWalk, 400, s));
    ScenarioTable table = sweep_scenarios(corpus, 50);
    auto grid = scenario_grid();
    for (std::size_t a = 0; a < 16; ++a) {
        for (std::size_t b = 0; b < 16; ++b) {
            if (grid[a].first >= grid[b].first && grid[a].second >= grid[b].second)
                CHECK(table.rows[a].mean_ratio <= table.rows[b].mean_ratio + 1e-12);
        }
    }
    CHECK(table.rows[15].mean_ratio < table.rows[0].mean_ratio);
}

TEST_CASE("the sweep is deterministic across thread counts") {
    std::vector<Trip> corpus;
    for (std::uint64_t s = 1; s <= 7; ++s)
        corpus.push_back(synth_trip(SynthKind::RandomWalk, 300, s));
    ScenarioTable one = sweep_scenarios(corpus, 50, 1);
    ScenarioTable four = sweep_scenarios(corpus, 50, 4);
    for (std::size_t i = 0; i < 16; ++i) {
        CHECK(one.rows[i].mean_ratio == four.rows[i].mean_ratio);
        CHECK(one.rows[i].ratio_histogram == four.rows[i].ratio_histogram);
    }
}
