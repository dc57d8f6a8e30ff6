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

#ifndef CVCOLLECT_SIM_HPP
#define CVCOLLECT_SIM_HPP

#include <cstdint>
#include <variant>
#include <vector>

#include "cvcollect/types.hpp"

namespace cvc {

// Two-lane freeway with a mid-corridor lane closure. Lengths in meters,
// speeds in m/s, times in seconds.
struct FreewayConfig {
    int n_sections = 5;
    double section_len = 1609.34;  // one mile
    int lanes = 2;
    double duration_s = 1800.0;
    double dt = 0.1;
    int demand = 1100;             // expected arrivals over the horizon
    double free_speed = 29.06;     // 65 mph
    double desired_speed_sigma = 1.0;

    bool incident_enabled = true;
    double incident_speed = 8.94;  // 20 mph in the surviving lane
    double incident_start_s = 600.0;
    double incident_end_s = 1200.0;
    int incident_section = 3;      // 1-based
    int closed_lane = 1;           // 0-based

    double warmup_s = 300.0;       // excluded from analysis
    double period_len_s = 300.0;

    // car following (simplified Newell/Gipps-style)
    double max_accel = 1.5;
    double max_decel = 3.0;
    double min_gap = 2.0;
    double headway_s = 1.0;
    double vehicle_len = 5.0;
    double merge_zone = 400.0;     // merge attempts start this far before the closure

    double total_length() const { return n_sections * section_len; }
    int n_steps() const { return static_cast<int>(duration_s / dt + 0.5); }
    double incident_begin_pos() const { return (incident_section - 1) * section_len; }
    double incident_end_pos() const { return incident_section * section_len; }
    bool incident_active(double time_s) const {
        return incident_enabled && time_s >= incident_start_s && time_s < incident_end_s;
    }
    void validate() const;
};

struct VehicleTrajectory {
    int id = 0;
    int entry_tick = 0;
    double desired_speed = 0.0;
    bool exited = false;
    int exit_tick = -1;
    // state at the end of each step, one entry per tick on the road
    std::vector<double> pos;
    std::vector<double> speed;
    std::vector<std::int8_t> lane;

    std::size_t ticks() const { return pos.size(); }
    int last_tick() const { return entry_tick + static_cast<int>(pos.size()) - 1; }
};

struct SimResult {
    FreewayConfig cfg;
    std::uint64_t seed = 0;
    std::vector<VehicleTrajectory> vehicles;
    int queued_never_entered = 0;
};

// Longitudinal dynamics only; data collection happens afterwards as a pure
// observer, so ground truth cannot depend on the collection strategy.
SimResult run_sim_physics(const FreewayConfig& cfg, std::uint64_t seed);

// What a connected vehicle's OBU records each tick.
struct ConventionalStrategy {};
struct UniformStrategy {
    int stride = 10;
};
struct CompressiveStrategy {
    double ratio = 0.1;
    std::uint64_t seed = 0;
};
struct MplaStrategy {
    ThresholdConfig cfg;
};
using CollectionStrategy =
    std::variant<ConventionalStrategy, UniformStrategy, CompressiveStrategy, MplaStrategy>;

// One OBU flush received by an RSU.
struct UploadBatch {
    int vehicle_id = 0;
    int rsu = 0;  // 1-based mile marker
    int upload_tick = 0;
    std::vector<Sample> samples;  // timestamps are absolute sim ticks
};

struct Uploads {
    std::vector<UploadBatch> batches;
    std::vector<int> connected_ids;
    std::size_t total_ticks_observed = 0;  // ticks driven by connected vehicles
    std::size_t total_emitted = 0;         // records that passed the strategy filter

    double realized_ratio() const {
        return total_ticks_observed == 0
                   ? 0.0
                   : static_cast<double>(total_emitted) / static_cast<double>(total_ticks_observed);
    }
};

// Replays trajectories through per-vehicle OBUs: the strategy filters each
// tick's sample before buffering, a full buffer FIFO-evicts its oldest record,
// and passing an RSU flushes the buffer losslessly. Sample dimensions are
// (speed m/s, latitude deg, longitude deg) with positions mapped to synthetic
// coordinates at 111,111 m/deg.
// With flush_at_end, buffers still held when a trajectory ends (horizon end or
// exit without a final RSU crossing) are uploaded too; by default those
// samples are lost, as they would be on a real roadside network.
Uploads collect_uploads(const SimResult& sim, double penetration,
                        const CollectionStrategy& strategy, int obu_capacity,
                        std::uint64_t assignment_seed, bool flush_at_end = false);

// Mean speed over all vehicle-ticks with position inside [pos_lo, pos_hi)
// and time inside [t_lo_s, t_hi_s).
double mean_speed_in_region(const SimResult& sim, double pos_lo, double pos_hi, double t_lo_s,
                            double t_hi_s);

}  // namespace cvc

#endif
