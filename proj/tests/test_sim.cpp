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

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "cvcollect/metrics.hpp"
#include "cvcollect/sim.hpp"
#include "doctest.h"

using namespace cvc;

namespace {

// one shared physics run per config keeps the suite fast
const SimResult& baseline_sim() {
    static SimResult sim = run_sim_physics(FreewayConfig{}, 7);
    return sim;
}

}  // namespace

TEST_CASE("identical seeds give bit-identical trajectories") {
    FreewayConfig cfg;
    SimResult a = run_sim_physics(cfg, 3);
    SimResult b = run_sim_physics(cfg, 3);
    REQUIRE(a.vehicles.size() == b.vehicles.size());
    for (std::size_t v = 0; v < a.vehicles.size(); ++v) {
        CHECK(a.vehicles[v].entry_tick == b.vehicles[v].entry_tick);
        CHECK(a.vehicles[v].pos == b.vehicles[v].pos);
        CHECK(a.vehicles[v].speed == b.vehicles[v].speed);
        CHECK(a.vehicles[v].lane == b.vehicles[v].lane);
    }
    SimResult c = run_sim_physics(cfg, 4);
    CHECK(a.vehicles.size() != c.vehicles.size());
}

TEST_CASE("every vehicle that enters either exits or survives to the horizon") {
    const SimResult& sim = baseline_sim();
    const int n_steps = sim.cfg.n_steps();
    for (const VehicleTrajectory& traj : sim.vehicles) {
        REQUIRE(traj.ticks() >= 1);
        if (traj.exited) {
            CHECK(traj.pos.back() >= sim.cfg.total_length());
        } else {
            CHECK(traj.last_tick() == n_steps - 1);
        }
    }
}

TEST_CASE("positions are nondecreasing and speeds stay in range") {
    const SimResult& sim = baseline_sim();
    for (const VehicleTrajectory& traj : sim.vehicles) {
        for (std::size_t i = 0; i < traj.ticks(); ++i) {
            CHECK(traj.speed[i] >= 0.0);
            CHECK(traj.speed[i] <= sim.cfg.free_speed + 3.0 * sim.cfg.desired_speed_sigma);
            if (i > 0) CHECK(traj.pos[i] >= traj.pos[i - 1]);
        }
    }
}

TEST_CASE("no two vehicles in one lane overlap") {
    const SimResult& sim = baseline_sim();
    const int n_steps = sim.cfg.n_steps();
    // sparse check: every 50th tick to keep runtime low
    for (int t = 0; t < n_steps; t += 50) {
        std::map<int, std::vector<double>> per_lane;
        for (const VehicleTrajectory& traj : sim.vehicles) {
            const int i = t - traj.entry_tick;
            if (i < 0 || i >= static_cast<int>(traj.ticks())) continue;
            if (traj.pos[static_cast<std::size_t>(i)] >= sim.cfg.total_length()) continue;
            per_lane[traj.lane[static_cast<std::size_t>(i)]].push_back(
                traj.pos[static_cast<std::size_t>(i)]);
        }
        for (auto& [lane, positions] : per_lane) {
            std::sort(positions.begin(), positions.end());
            for (std::size_t k = 1; k < positions.size(); ++k)
                CHECK(positions[k] - positions[k - 1] >= sim.cfg.vehicle_len - 1e-9);
        }
    }
}

TEST_CASE("the incident produces a shockwave reaching back into the upstream section") {
    const SimResult& sim = baseline_sim();
    const double l = sim.cfg.section_len;
    const double v_before = mean_speed_in_region(sim, l, 3.0 * l, 300.0, 600.0);
    const double v_during = mean_speed_in_region(sim, l, 3.0 * l, 600.0, 1200.0);
    CHECK(v_during < 0.7 * v_before);
    // the upstream section alone also slows: congestion spills past the closure
    const double v2_before = mean_speed_in_region(sim, l, 2.0 * l, 300.0, 600.0);
    const double v2_during = mean_speed_in_region(sim, l, 2.0 * l, 600.0, 1200.0);
    CHECK(v2_during < v2_before);
}

TEST_CASE("disabling the incident leaves free flow everywhere") {
    FreewayConfig cfg;
    cfg.incident_enabled = false;
    SimResult sim = run_sim_physics(cfg, 7);
    const double v = mean_speed_in_region(sim, 0.0, cfg.total_length(), 300.0, 1800.0);
    CHECK(std::abs(v - cfg.free_speed) < 0.1 * cfg.free_speed);
}

TEST_CASE("zero penetration uploads nothing but physics still runs") {
    const SimResult& sim = baseline_sim();
    Uploads up = collect_uploads(sim, 0.0, ConventionalStrategy{}, 100, 1);
    CHECK(up.batches.empty());
    CHECK(up.connected_ids.empty());
    CHECK(up.total_ticks_observed == 0);
}

TEST_CASE("uploads are capped by the buffer and end at the crossing tick") {
    const SimResult& sim = baseline_sim();
    const int capacity = 30;
    Uploads up = collect_uploads(sim, 1.0, ConventionalStrategy{}, capacity, 1);
    REQUIRE(!up.batches.empty());
    for (const UploadBatch& batch : up.batches) {
        CHECK(batch.samples.size() <= static_cast<std::size_t>(capacity));
        // conventional records every tick, so a surviving buffer is contiguous
        for (std::size_t i = 1; i < batch.samples.size(); ++i)
            CHECK(batch.samples[i].t == batch.samples[i - 1].t + 1);
        CHECK(batch.samples.back().t == batch.upload_tick);
    }
}

TEST_CASE("a larger buffer receives a superset of the kept samples") {
    const SimResult& sim = baseline_sim();
    Uploads small = collect_uploads(sim, 0.5, ConventionalStrategy{}, 30, 1);
    Uploads large = collect_uploads(sim, 0.5, ConventionalStrategy{}, 300, 1);
    std::set<std::pair<int, DeciSeconds>> large_keys;
    for (const UploadBatch& b : large.batches)
        for (const Sample& s : b.samples) large_keys.insert({b.vehicle_id, s.t});
    for (const UploadBatch& b : small.batches)
        for (const Sample& s : b.samples)
            CHECK(large_keys.count({b.vehicle_id, s.t}) == 1);
}

TEST_CASE("collection strategies observe identical physics") {
    // ground truth comes from run_sim_physics alone; uploading is a pure
    // observer, so upload contents at covered ticks equal the trajectory
    const SimResult& sim = baseline_sim();
    Uploads up = collect_uploads(sim, 0.3, UniformStrategy{10}, 50, 2);
    std::map<int, const VehicleTrajectory*> by_id;
    for (const VehicleTrajectory& traj : sim.vehicles) by_id[traj.id] = &traj;
    for (const UploadBatch& batch : up.batches) {
        const VehicleTrajectory& traj = *by_id.at(batch.vehicle_id);
        for (const Sample& s : batch.samples) {
            const int i = static_cast<int>(s.t) - traj.entry_tick;
            REQUIRE(i >= 0);
            REQUIRE(i < static_cast<int>(traj.ticks()));
            CHECK(s.values[0] == traj.speed[static_cast<std::size_t>(i)]);
            CHECK(s.values[1] ==
                  traj.pos[static_cast<std::size_t>(i)] / kMetersPerDegree);
        }
    }
}

TEST_CASE("the strategy filter controls the realized collection ratio") {
    const SimResult& sim = baseline_sim();
    Uploads conv = collect_uploads(sim, 0.5, ConventionalStrategy{}, 1000000, 1);
    CHECK(conv.realized_ratio() == 1.0);
    Uploads uni = collect_uploads(sim, 0.5, UniformStrategy{10}, 1000000, 1);
    CHECK(uni.realized_ratio() == doctest::Approx(0.1).epsilon(0.02));
    Uploads cs = collect_uploads(sim, 0.5, CompressiveStrategy{0.2, 9}, 1000000, 1);
    CHECK(cs.realized_ratio() == doctest::Approx(0.2).epsilon(0.05));
}

TEST_CASE("upload collection is deterministic in the assignment seed") {
    const SimResult& sim = baseline_sim();
    Uploads a = collect_uploads(sim, 0.5, CompressiveStrategy{0.1, 5}, 50, 11);
    Uploads b = collect_uploads(sim, 0.5, CompressiveStrategy{0.1, 5}, 50, 11);
    CHECK(a.connected_ids == b.connected_ids);
    REQUIRE(a.batches.size() == b.batches.size());
    for (std::size_t k = 0; k < a.batches.size(); ++k) {
        CHECK(a.batches[k].vehicle_id == b.batches[k].vehicle_id);
        CHECK(a.batches[k].samples.size() == b.batches[k].samples.size());
    }
    Uploads c = collect_uploads(sim, 0.5, CompressiveStrategy{0.1, 5}, 50, 12);
    CHECK(a.connected_ids != c.connected_ids);
}

TEST_CASE("configuration validation rejects nonsense") {
    FreewayConfig bad;
    bad.dt = 0.0;
    CHECK_THROWS(bad.validate());
    bad = {};
    bad.incident_start_s = 2000.0;
    CHECK_THROWS(bad.validate());
    const SimResult& sim = baseline_sim();
    CHECK_THROWS(collect_uploads(sim, 1.5, ConventionalStrategy{}, 10, 1));
    CHECK_THROWS(collect_uploads(sim, 0.5, ConventionalStrategy{}, 0, 1));
}
