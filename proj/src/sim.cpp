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

#include "cvcollect/sim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "cvcollect/metrics.hpp"
#include "cvcollect/mpla.hpp"
#include "cvcollect/rng.hpp"

namespace cvc {

void FreewayConfig::validate() const {
    if (n_sections < 1 || lanes < 1 || demand < 0) throw std::invalid_argument("FreewayConfig: bad counts");
    if (!(section_len > 0 && duration_s > 0 && dt > 0 && free_speed > 0))
        throw std::invalid_argument("FreewayConfig: non-positive geometry");
    if (incident_enabled) {
        if (incident_section < 1 || incident_section > n_sections)
            throw std::invalid_argument("FreewayConfig: incident section out of range");
        if (!(incident_start_s >= 0 && incident_end_s <= duration_s &&
              incident_start_s < incident_end_s))
            throw std::invalid_argument("FreewayConfig: incident window outside horizon");
        if (closed_lane < 0 || closed_lane >= lanes)
            throw std::invalid_argument("FreewayConfig: closed lane out of range");
    }
    if (!(max_accel > 0 && max_decel > 0 && min_gap > 0 && headway_s > 0 && vehicle_len > 0))
        throw std::invalid_argument("FreewayConfig: non-positive dynamics parameter");
}

namespace {

// Gipps-style braking-safe speed behind a leader at distance `gap`.
double safe_speed(double gap, double leader_speed, double b, double tau, double min_gap) {
    const double g = gap - min_gap;
    if (g <= 0.0) return 0.0;
    const double bt = b * tau;
    return std::max(0.0, -bt + std::sqrt(bt * bt + leader_speed * leader_speed + 2.0 * b * g));
}

struct Arrival {
    double time_s;
    int lane;
    double desired;
};

}  // namespace

SimResult run_sim_physics(const FreewayConfig& cfg, std::uint64_t seed) {
    cfg.validate();

    SimResult result;
    result.cfg = cfg;
    result.seed = seed;

    // seeded Poisson arrivals, alternating lanes for an even split
    Rng rng(seed);
    const double rate = static_cast<double>(cfg.demand) / cfg.duration_s;
    std::vector<Arrival> arrivals;
    if (cfg.demand > 0) {
        double t = rng.exponential(rate);
        int i = 0;
        while (t < cfg.duration_s) {
            const double lo = cfg.free_speed - 2.0 * cfg.desired_speed_sigma;
            const double hi = cfg.free_speed + 2.0 * cfg.desired_speed_sigma;
            const double desired =
                std::clamp(rng.normal(cfg.free_speed, cfg.desired_speed_sigma), lo, hi);
            arrivals.push_back({t, i % cfg.lanes, desired});
            t += rng.exponential(rate);
            ++i;
        }
    }

    result.vehicles.resize(arrivals.size());
    std::vector<double> pos(arrivals.size(), 0.0), spd(arrivals.size(), 0.0);
    std::vector<int> lane_of(arrivals.size(), 0);
    std::vector<bool> active(arrivals.size(), false);

    // per-lane order, front (largest position) first
    std::vector<std::vector<int>> lane_order(cfg.lanes);
    std::vector<std::deque<int>> entry_queue(cfg.lanes);
    for (std::size_t v = 0; v < arrivals.size(); ++v) {
        result.vehicles[v].id = static_cast<int>(v);
        result.vehicles[v].desired_speed = arrivals[v].desired;
        entry_queue[arrivals[v].lane].push_back(static_cast<int>(v));
    }

    const double wall_pos = cfg.incident_begin_pos();
    const int n_steps = cfg.n_steps();

    auto limit_at = [&](double p, double time_s) {
        if (cfg.incident_active(time_s) && p >= cfg.incident_begin_pos() &&
            p < cfg.incident_end_pos())
            return cfg.incident_speed;
        return cfg.free_speed;
    };

    for (int tick = 0; tick < n_steps; ++tick) {
        const double time_s = tick * cfg.dt;
        const bool incident_now = cfg.incident_active(time_s);

        // entries (at most one per lane per step)
        for (int ln = 0; ln < cfg.lanes; ++ln) {
            auto& q = entry_queue[ln];
            if (q.empty() || arrivals[q.front()].time_s > time_s) continue;
            const int v = q.front();
            double entry_speed = std::min(arrivals[v].desired, limit_at(0.0, time_s));
            if (!lane_order[ln].empty()) {
                const int rear = lane_order[ln].back();
                const double gap = pos[rear] - cfg.vehicle_len;
                if (gap < cfg.min_gap) continue;  // blocked, wait
                entry_speed = std::min(
                    entry_speed, safe_speed(gap, spd[rear], cfg.max_decel, cfg.headway_s, cfg.min_gap));
            }
            q.pop_front();
            pos[v] = 0.0;
            spd[v] = entry_speed;
            lane_of[v] = ln;
            active[v] = true;
            lane_order[ln].push_back(v);
            result.vehicles[v].entry_tick = tick;
        }

        // forced merges out of the closed lane
        if (incident_now && cfg.lanes >= 2) {
            const int open = (cfg.closed_lane == 0) ? 1 : 0;
            auto& closed = lane_order[cfg.closed_lane];
            auto& target = lane_order[open];
            for (std::size_t k = 0; k < closed.size();) {
                const int v = closed[k];
                if (pos[v] >= wall_pos || pos[v] < wall_pos - cfg.merge_zone) {
                    ++k;
                    continue;
                }
                // neighbours in the target lane
                auto it = std::lower_bound(target.begin(), target.end(), v,
                                           [&](int a, int b) { return pos[a] > pos[b]; });
                bool ok = true;
                if (it != target.begin()) {
                    const int leader = *(it - 1);
                    if (pos[leader] - pos[v] < cfg.vehicle_len + cfg.min_gap) ok = false;
                }
                if (ok && it != target.end()) {
                    const int follower = *it;
                    if (pos[v] - pos[follower] < cfg.vehicle_len + cfg.min_gap) ok = false;
                }
                if (ok) {
                    target.insert(it, v);
                    lane_of[v] = open;
                    closed.erase(closed.begin() + static_cast<std::ptrdiff_t>(k));
                } else {
                    ++k;
                }
            }
        }

        // longitudinal update, front to back, against the leader's new state
        for (int ln = 0; ln < cfg.lanes; ++ln) {
            const bool lane_walled = incident_now && ln == cfg.closed_lane;
            int leader = -1;
            for (int v : lane_order[ln]) {
                double target = std::min(result.vehicles[v].desired_speed, limit_at(pos[v], time_s));
                if (incident_now && pos[v] < wall_pos) {
                    // anticipate the reduced limit ahead
                    const double allowed = std::sqrt(cfg.incident_speed * cfg.incident_speed +
                                                     2.0 * cfg.max_decel * (wall_pos - pos[v]));
                    target = std::min(target, allowed);
                }
                if (leader >= 0) {
                    target = std::min(target, safe_speed(pos[leader] - pos[v] - cfg.vehicle_len,
                                                         spd[leader], cfg.max_decel, cfg.headway_s,
                                                         cfg.min_gap));
                }
                if (lane_walled && pos[v] < wall_pos) {
                    target = std::min(target, safe_speed(wall_pos - pos[v], 0.0, cfg.max_decel,
                                                         cfg.headway_s, cfg.min_gap));
                }

                double v_new = std::clamp(target, spd[v] - cfg.max_decel * cfg.dt,
                                          spd[v] + cfg.max_accel * cfg.dt);
                v_new = std::max(0.0, v_new);
                double p_new = pos[v] + v_new * cfg.dt;
                if (leader >= 0) p_new = std::min(p_new, pos[leader] - cfg.vehicle_len - 1e-3);
                if (lane_walled && pos[v] < wall_pos) p_new = std::min(p_new, wall_pos - 1e-3);
                p_new = std::max(p_new, pos[v]);
                spd[v] = (p_new - pos[v]) / cfg.dt;
                pos[v] = p_new;
                leader = v;
            }
        }

        // record, then drop vehicles past the end
        for (int ln = 0; ln < cfg.lanes; ++ln) {
            auto& order = lane_order[ln];
            for (std::size_t k = 0; k < order.size();) {
                const int v = order[k];
                VehicleTrajectory& traj = result.vehicles[v];
                traj.pos.push_back(pos[v]);
                traj.speed.push_back(spd[v]);
                traj.lane.push_back(static_cast<std::int8_t>(ln));
                if (pos[v] > cfg.total_length()) {
                    traj.exited = true;
                    traj.exit_tick = tick;
                    active[v] = false;
                    order.erase(order.begin() + static_cast<std::ptrdiff_t>(k));
                } else {
                    ++k;
                }
            }
        }
    }

    for (int ln = 0; ln < cfg.lanes; ++ln)
        result.queued_never_entered += static_cast<int>(entry_queue[ln].size());

    // vehicles that never entered have empty trajectories; drop them
    std::vector<VehicleTrajectory> kept;
    kept.reserve(result.vehicles.size());
    for (auto& v : result.vehicles)
        if (!v.pos.empty()) kept.push_back(std::move(v));
    result.vehicles = std::move(kept);
    return result;
}

namespace {

constexpr double kLaneSpacingM = 3.5;

Sample make_sample(const FreewayConfig&, const VehicleTrajectory& traj, std::size_t i) {
    Sample s;
    s.t = static_cast<DeciSeconds>(traj.entry_tick + static_cast<int>(i));
    s.values = {traj.speed[i], traj.pos[i] / kMetersPerDegree,
                (static_cast<double>(traj.lane[i]) * kLaneSpacingM) / kMetersPerDegree};
    return s;
}

class StrategyFilter {
  public:
    StrategyFilter(const CollectionStrategy& strategy, int vehicle_id) {
        if (std::holds_alternative<UniformStrategy>(strategy)) {
            stride_ = std::get<UniformStrategy>(strategy).stride;
            if (stride_ < 1) throw std::invalid_argument("UniformStrategy: stride must be >= 1");
            mode_ = Mode::Uniform;
        } else if (std::holds_alternative<CompressiveStrategy>(strategy)) {
            const auto& cs = std::get<CompressiveStrategy>(strategy);
            if (!(cs.ratio > 0.0) || cs.ratio > 1.0)
                throw std::invalid_argument("CompressiveStrategy: ratio must be in (0,1]");
            ratio_ = cs.ratio;
            rng_.emplace(cs.seed ^ (static_cast<std::uint64_t>(vehicle_id) * 0x9e3779b97f4a7c15ull));
            mode_ = Mode::Compressive;
        } else if (std::holds_alternative<MplaStrategy>(strategy)) {
            encoder_.emplace(std::get<MplaStrategy>(strategy).cfg);
            mode_ = Mode::Mpla;
        } else {
            mode_ = Mode::Conventional;
        }
    }

    // whether this tick's sample is recorded
    bool record(const Sample& s) {
        switch (mode_) {
            case Mode::Conventional:
                return true;
            case Mode::Uniform:
                return (tick_++ % static_cast<std::size_t>(stride_)) == 0;
            case Mode::Compressive:
                return rng_->uniform() < ratio_;
            case Mode::Mpla:
                return !encoder_->push(s).empty();
        }
        return true;
    }

  private:
    enum class Mode { Conventional, Uniform, Compressive, Mpla };
    Mode mode_ = Mode::Conventional;
    int stride_ = 1;
    std::size_t tick_ = 0;
    double ratio_ = 1.0;
    std::optional<Rng> rng_;
    std::optional<MplaStreamEncoder> encoder_;
};

}  // namespace

Uploads collect_uploads(const SimResult& sim, double penetration,
                        const CollectionStrategy& strategy, int obu_capacity,
                        std::uint64_t assignment_seed, bool flush_at_end) {
    if (penetration < 0.0 || penetration > 1.0)
        throw std::invalid_argument("collect_uploads: penetration must be in [0,1]");
    if (obu_capacity < 1) throw std::invalid_argument("collect_uploads: capacity must be >= 1");

    const FreewayConfig& cfg = sim.cfg;
    Uploads up;

    Rng assign(assignment_seed);
    std::vector<bool> connected(sim.vehicles.size(), false);
    for (std::size_t v = 0; v < sim.vehicles.size(); ++v) {
        connected[v] = assign.uniform() < penetration;
        if (connected[v]) up.connected_ids.push_back(sim.vehicles[v].id);
    }

    for (std::size_t v = 0; v < sim.vehicles.size(); ++v) {
        if (!connected[v]) continue;
        const VehicleTrajectory& traj = sim.vehicles[v];
        StrategyFilter filter(strategy, traj.id);
        std::deque<Sample> buffer;
        int next_rsu = 1;

        for (std::size_t i = 0; i < traj.ticks(); ++i) {
            const Sample s = make_sample(cfg, traj, i);
            up.total_ticks_observed += 1;
            if (filter.record(s)) {
                up.total_emitted += 1;
                buffer.push_back(s);
                if (buffer.size() > static_cast<std::size_t>(obu_capacity)) buffer.pop_front();
            }
            while (next_rsu <= cfg.n_sections &&
                   traj.pos[i] >= static_cast<double>(next_rsu) * cfg.section_len) {
                if (!buffer.empty()) {
                    UploadBatch batch;
                    batch.vehicle_id = traj.id;
                    batch.rsu = next_rsu;
                    batch.upload_tick = traj.entry_tick + static_cast<int>(i);
                    batch.samples.assign(buffer.begin(), buffer.end());
                    up.batches.push_back(std::move(batch));
                    buffer.clear();
                }
                ++next_rsu;
            }
        }
        if (flush_at_end && !buffer.empty()) {
            UploadBatch batch;
            batch.vehicle_id = traj.id;
            batch.rsu = 0;  // synthetic horizon-end receiver
            batch.upload_tick = traj.last_tick();
            batch.samples.assign(buffer.begin(), buffer.end());
            up.batches.push_back(std::move(batch));
        }
    }
    return up;
}

double mean_speed_in_region(const SimResult& sim, double pos_lo, double pos_hi, double t_lo_s,
                            double t_hi_s) {
    double sum = 0.0;
    std::size_t count = 0;
    const double dt = sim.cfg.dt;
    for (const VehicleTrajectory& traj : sim.vehicles) {
        for (std::size_t i = 0; i < traj.ticks(); ++i) {
            const double t = (traj.entry_tick + static_cast<int>(i)) * dt;
            if (t < t_lo_s || t >= t_hi_s) continue;
            if (traj.pos[i] < pos_lo || traj.pos[i] >= pos_hi) continue;
            sum += traj.speed[i];
            count += 1;
        }
    }
    return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

}  // namespace cvc
