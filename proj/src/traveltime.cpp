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

#include "cvcollect/traveltime.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "cvcollect/baselines.hpp"
#include "cvcollect/dct.hpp"
#include "cvcollect/metrics.hpp"

namespace cvc {

namespace {

int n_periods_of(const FreewayConfig& cfg) {
    return static_cast<int>((cfg.duration_s - cfg.warmup_s) / cfg.period_len_s + 0.5);
}

// period index of an absolute tick, or -1 inside the warm-up window
int period_of(int tick, const FreewayConfig& cfg) {
    const double t = tick * cfg.dt;
    if (t < cfg.warmup_s) return -1;
    const int p = static_cast<int>((t - cfg.warmup_s) / cfg.period_len_s);
    return p < n_periods_of(cfg) ? p : -1;
}

struct CoveredPoint {
    int tick;
    double speed;
    double pos;
};

// per-step per-section speed sums, the inner sum of the mean-speed statistic
class SpeedAccumulator {
  public:
    explicit SpeedAccumulator(const FreewayConfig& cfg)
        : cfg_(cfg),
          n_steps_(cfg.n_steps()),
          sum_(static_cast<std::size_t>(cfg.n_sections) * n_steps_, 0.0),
          cnt_(static_cast<std::size_t>(cfg.n_sections) * n_steps_, 0) {}

    void add(const CoveredPoint& p) {
        if (p.tick < 0 || p.tick >= n_steps_) return;
        const int sec = static_cast<int>(p.pos / cfg_.section_len);
        if (sec < 0 || sec >= cfg_.n_sections) return;
        const std::size_t i = static_cast<std::size_t>(sec) * n_steps_ + p.tick;
        sum_[i] += p.speed;
        cnt_[i] += 1;
    }

    // average the per-step means over steps with coverage; T = l / v
    TtGrid finalize() const {
        TtGrid grid = make_grid(cfg_);
        for (int sec = 0; sec < cfg_.n_sections; ++sec) {
            for (int per = 0; per < grid.n_periods; ++per) {
                const int tick_lo =
                    static_cast<int>((cfg_.warmup_s + per * cfg_.period_len_s) / cfg_.dt + 0.5);
                const int tick_hi = tick_lo + static_cast<int>(cfg_.period_len_s / cfg_.dt + 0.5);
                double mean_sum = 0.0;
                std::size_t covered_steps = 0;
                for (int t = tick_lo; t < std::min(tick_hi, n_steps_); ++t) {
                    const std::size_t i = static_cast<std::size_t>(sec) * n_steps_ + t;
                    if (cnt_[i] == 0) continue;
                    mean_sum += sum_[i] / static_cast<double>(cnt_[i]);
                    covered_steps += 1;
                }
                if (covered_steps == 0) {
                    grid.flag(sec, per);
                    continue;
                }
                const double v_bar = mean_sum / static_cast<double>(covered_steps);
                if (v_bar <= 1e-9) {
                    grid.flag(sec, per);
                    continue;
                }
                grid.at(sec, per) = cfg_.section_len / v_bar;
            }
        }
        return grid;
    }

  private:
    const FreewayConfig& cfg_;
    int n_steps_;
    std::vector<double> sum_;
    std::vector<std::uint32_t> cnt_;
};

void reconstruct_conventional(const UploadBatch& batch, std::vector<CoveredPoint>& out) {
    for (const Sample& s : batch.samples)
        out.push_back({static_cast<int>(s.t), s.values[0], s.values[1] * kMetersPerDegree});
}

void reconstruct_uniform(const UploadBatch& batch, int stride, std::vector<CoveredPoint>& out) {
    const auto& rec = batch.samples;
    for (std::size_t k = 0; k < rec.size(); ++k) {
        out.push_back(
            {static_cast<int>(rec[k].t), rec[k].values[0], rec[k].values[1] * kMetersPerDegree});
        if (k + 1 < rec.size()) {
            const auto gap = rec[k + 1].t - rec[k].t;
            if (gap > 1 && gap <= stride) {
                for (DeciSeconds j = 1; j < gap; ++j) {
                    const double w = static_cast<double>(j) / static_cast<double>(gap);
                    const double speed =
                        (1.0 - w) * rec[k].values[0] + w * rec[k + 1].values[0];
                    const double lat = (1.0 - w) * rec[k].values[1] + w * rec[k + 1].values[1];
                    out.push_back({static_cast<int>(rec[k].t + j), speed, lat * kMetersPerDegree});
                }
            }
        }
    }
}

void reconstruct_mpla(const UploadBatch& batch, std::vector<CoveredPoint>& out) {
    const auto& rec = batch.samples;
    double dspeed = 0.0, dlat = 0.0;
    bool have_delta = false;
    for (std::size_t k = 0; k < rec.size(); ++k) {
        out.push_back(
            {static_cast<int>(rec[k].t), rec[k].values[0], rec[k].values[1] * kMetersPerDegree});
        if (k + 1 < rec.size()) {
            const auto gap = rec[k + 1].t - rec[k].t;
            if (gap > 1 && have_delta) {
                // inside a skipped run the segment slope from the last exact
                // pair is still in force
                for (DeciSeconds j = 1; j < gap; ++j) {
                    const double speed = rec[k].values[0] + static_cast<double>(j) * dspeed;
                    const double lat = rec[k].values[1] + static_cast<double>(j) * dlat;
                    out.push_back({static_cast<int>(rec[k].t + j), speed, lat * kMetersPerDegree});
                }
            }
            if (gap == 1) {
                dspeed = rec[k + 1].values[0] - rec[k].values[0];
                dlat = rec[k + 1].values[1] - rec[k].values[1];
                have_delta = true;
            }
        }
    }
}

void reconstruct_cs(const UploadBatch& batch, const BpSolverConfig& solver,
                    const Eigen::MatrixXd& psi_full, std::vector<CoveredPoint>& out,
                    int& empty_blocks, int& nonconverged) {
    const auto& rec = batch.samples;
    if (rec.empty()) return;
    const DeciSeconds first = rec.front().t;
    const DeciSeconds last = rec.back().t;
    std::size_t cursor = 0;
    for (DeciSeconds a = first; a <= last; a += static_cast<DeciSeconds>(kCsBlockLen)) {
        const DeciSeconds b = std::min<DeciSeconds>(a + static_cast<DeciSeconds>(kCsBlockLen) - 1, last);
        const std::size_t len = static_cast<std::size_t>(b - a + 1);

        std::vector<std::size_t> offsets;
        std::vector<const Sample*> sel;
        while (cursor < rec.size() && rec[cursor].t <= b) {
            offsets.push_back(static_cast<std::size_t>(rec[cursor].t - a));
            sel.push_back(&rec[cursor]);
            ++cursor;
        }
        if (sel.empty()) {
            empty_blocks += 1;
            continue;
        }

        Eigen::MatrixXd psi_short;
        if (len != static_cast<std::size_t>(psi_full.cols())) psi_short = dct_matrix(len);
        const Eigen::MatrixXd& psi = psi_short.size() > 0 ? psi_short : psi_full;
        Eigen::MatrixXd theta(sel.size(), len);
        for (std::size_t r = 0; r < sel.size(); ++r)
            theta.row(r) = psi.col(offsets[r]).transpose();

        Eigen::VectorXd y_speed(sel.size()), y_lat(sel.size());
        for (std::size_t r = 0; r < sel.size(); ++r) {
            y_speed[static_cast<Eigen::Index>(r)] = sel[r]->values[0];
            y_lat[static_cast<Eigen::Index>(r)] = sel[r]->values[1];
        }
        BpResult bp_speed = basis_pursuit(theta, y_speed, solver);
        BpResult bp_lat = basis_pursuit(theta, y_lat, solver);
        if (!bp_speed.converged) nonconverged += 1;
        if (!bp_lat.converged) nonconverged += 1;
        Eigen::VectorXd speed = psi.transpose() * bp_speed.alpha;
        Eigen::VectorXd lat = psi.transpose() * bp_lat.alpha;
        for (std::size_t j = 0; j < len; ++j) {
            out.push_back({static_cast<int>(a) + static_cast<int>(j),
                           speed[static_cast<Eigen::Index>(j)],
                           lat[static_cast<Eigen::Index>(j)] * kMetersPerDegree});
        }
    }
}

}  // namespace

TtGrid make_grid(const FreewayConfig& cfg) {
    TtGrid grid;
    grid.n_sections = cfg.n_sections;
    grid.n_periods = n_periods_of(cfg);
    grid.value.assign(static_cast<std::size_t>(grid.n_sections) * grid.n_periods, 0.0);
    grid.flagged.assign(grid.value.size(), false);
    return grid;
}

TtGrid exact_travel_time(const SimResult& sim) {
    const FreewayConfig& cfg = sim.cfg;
    TtGrid grid = make_grid(cfg);
    std::vector<double> sums(grid.value.size(), 0.0);
    std::vector<std::size_t> counts(grid.value.size(), 0);

    for (const VehicleTrajectory& traj : sim.vehicles) {
        // first tick at or past each section boundary
        std::vector<int> crossing(static_cast<std::size_t>(cfg.n_sections) + 1, -1);
        int next = 0;
        for (std::size_t i = 0; i < traj.ticks() && next <= cfg.n_sections; ++i) {
            while (next <= cfg.n_sections && traj.pos[i] >= next * cfg.section_len) {
                crossing[next] = static_cast<int>(i);
                ++next;
            }
        }
        for (int sec = 0; sec < cfg.n_sections; ++sec) {
            if (crossing[sec] < 0 || crossing[sec + 1] < 0) continue;
            const int entry_tick = traj.entry_tick + crossing[sec];
            const int per = period_of(entry_tick, cfg);
            if (per < 0) continue;
            const double tt = (crossing[sec + 1] - crossing[sec]) * cfg.dt;
            const std::size_t cell = static_cast<std::size_t>(sec) * grid.n_periods + per;
            sums[cell] += tt;
            counts[cell] += 1;
        }
    }

    for (std::size_t cell = 0; cell < grid.value.size(); ++cell) {
        if (counts[cell] == 0 || sums[cell] <= 0.0)
            grid.flagged[cell] = true;
        else
            grid.value[cell] = sums[cell] / static_cast<double>(counts[cell]);
    }
    return grid;
}

TtGrid speed_grid_from_truth(const SimResult& sim) {
    SpeedAccumulator acc(sim.cfg);
    for (const VehicleTrajectory& traj : sim.vehicles) {
        for (std::size_t i = 0; i < traj.ticks(); ++i) {
            // the same degree round-trip the upload pipeline applies
            const double lat = traj.pos[i] / kMetersPerDegree;
            acc.add({traj.entry_tick + static_cast<int>(i), traj.speed[i],
                     lat * kMetersPerDegree});
        }
    }
    return acc.finalize();
}

EstimateResult estimate_travel_time(const SimResult& sim, const Uploads& uploads,
                                    const CollectionStrategy& strategy,
                                    const BpSolverConfig& cs_solver, int jobs) {
    EstimateResult result;
    const std::size_t nb = uploads.batches.size();
    const bool is_cs = std::holds_alternative<CompressiveStrategy>(strategy);
    const Eigen::MatrixXd psi_full = is_cs ? dct_matrix(kCsBlockLen) : Eigen::MatrixXd();
    std::vector<std::vector<CoveredPoint>> points(nb);
    std::vector<int> empties(nb, 0), noncov(nb, 0);

    auto decode_range = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t k = lo; k < hi; ++k) {
            const UploadBatch& batch = uploads.batches[k];
            if (std::holds_alternative<ConventionalStrategy>(strategy)) {
                reconstruct_conventional(batch, points[k]);
            } else if (std::holds_alternative<UniformStrategy>(strategy)) {
                reconstruct_uniform(batch, std::get<UniformStrategy>(strategy).stride, points[k]);
            } else if (std::holds_alternative<MplaStrategy>(strategy)) {
                reconstruct_mpla(batch, points[k]);
            } else {
                reconstruct_cs(batch, cs_solver, psi_full, points[k], empties[k], noncov[k]);
            }
        }
    };

    const int nthreads = std::max(1, jobs);
    if (nthreads == 1 || nb < 2) {
        decode_range(0, nb);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (nb + nthreads - 1) / nthreads;
        for (int w = 0; w < nthreads; ++w) {
            const std::size_t lo = std::min(nb, static_cast<std::size_t>(w) * chunk);
            const std::size_t hi = std::min(nb, lo + chunk);
            if (lo < hi) pool.emplace_back(decode_range, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    SpeedAccumulator acc(sim.cfg);
    for (std::size_t k = 0; k < nb; ++k) {
        for (const CoveredPoint& p : points[k]) acc.add(p);
        result.empty_blocks += empties[k];
        result.nonconverged_blocks += noncov[k];
    }
    result.grid = acc.finalize();
    return result;
}

RelErrResult relative_error(const TtGrid& exact, const TtGrid& estimate) {
    if (exact.n_sections != estimate.n_sections || exact.n_periods != estimate.n_periods)
        throw std::invalid_argument("relative_error: grid shape mismatch");
    RelErrResult r;
    double sum = 0.0;
    int used = 0;
    for (std::size_t cell = 0; cell < exact.value.size(); ++cell) {
        if (exact.flagged[cell] || estimate.flagged[cell]) {
            r.excluded_cells += 1;
            continue;
        }
        sum += std::abs(estimate.value[cell] - exact.value[cell]) / exact.value[cell];
        used += 1;
    }
    if (used == 0) {
        r.defined = false;
        return r;
    }
    r.value = sum / static_cast<double>(used);
    return r;
}

namespace {

std::uint64_t assignment_seed_for(std::uint64_t sim_seed) {
    return sim_seed * 0x9e3779b97f4a7c15ull + 0x51ull;
}

std::uint64_t cs_seed_for(std::uint64_t sim_seed) { return sim_seed ^ 0xc5c5c5c5ull; }

struct CellAccum {
    double e_sum = 0.0;
    int e_count = 0;
    int excluded = 0;
    double ratio_sum = 0.0;
};

}  // namespace

std::vector<ExperimentCell> capacity_experiment(const ExperimentConfig& cfg, double penetration,
                                                const std::vector<int>& capacities) {
    const std::vector<std::string> names = {"conventional", "uniform", "cs", "mpla"};
    std::vector<std::vector<CellAccum>> acc(names.size(),
                                            std::vector<CellAccum>(capacities.size()));

    for (std::uint64_t seed : cfg.seeds) {
        SimResult sim = run_sim_physics(cfg.freeway, seed);
        const TtGrid exact = exact_travel_time(sim);
        const std::uint64_t assign = assignment_seed_for(seed);

        // realized ratio is capacity-independent; probe it cheaply
        const CollectionStrategy mpla = MplaStrategy{cfg.mpla_thresholds};
        const double ratio =
            collect_uploads(sim, penetration, mpla, 1, assign).realized_ratio();
        const int stride = std::max(1, static_cast<int>(std::lround(1.0 / std::max(ratio, 1e-6))));
        const double cs_ratio = std::clamp(ratio, 1e-6, 1.0);

        const std::vector<CollectionStrategy> strategies = {
            ConventionalStrategy{}, UniformStrategy{stride},
            CompressiveStrategy{cs_ratio, cs_seed_for(seed)}, mpla};

        for (std::size_t ci = 0; ci < capacities.size(); ++ci) {
            for (std::size_t si = 0; si < strategies.size(); ++si) {
                Uploads up = collect_uploads(sim, penetration, strategies[si], capacities[ci],
                                             assign, cfg.flush_at_horizon);
                EstimateResult est =
                    estimate_travel_time(sim, up, strategies[si], cfg.cs_solver, cfg.jobs);
                RelErrResult e = relative_error(exact, est.grid);
                CellAccum& a = acc[si][ci];
                if (e.defined) {
                    a.e_sum += e.value;
                    a.e_count += 1;
                }
                a.excluded += e.excluded_cells;
                a.ratio_sum += up.realized_ratio();
            }
        }
    }

    std::vector<ExperimentCell> cells;
    for (std::size_t si = 0; si < names.size(); ++si) {
        for (std::size_t ci = 0; ci < capacities.size(); ++ci) {
            const CellAccum& a = acc[si][ci];
            ExperimentCell cell;
            cell.strategy = names[si];
            cell.param = capacities[ci];
            cell.e_r = a.e_count > 0 ? a.e_sum / a.e_count : std::nan("");
            cell.excluded_cells = a.excluded;
            cell.realized_ratio = a.ratio_sum / static_cast<double>(cfg.seeds.size());
            cells.push_back(std::move(cell));
        }
    }
    return cells;
}

std::vector<ExperimentCell> penetration_experiment(const ExperimentConfig& cfg, int capacity,
                                                   const std::vector<double>& penetrations) {
    const std::vector<std::string> names = {"conventional", "uniform", "cs", "mpla"};
    std::vector<std::vector<CellAccum>> acc(names.size(),
                                            std::vector<CellAccum>(penetrations.size()));

    for (std::uint64_t seed : cfg.seeds) {
        SimResult sim = run_sim_physics(cfg.freeway, seed);
        const TtGrid exact = exact_travel_time(sim);
        const std::uint64_t assign = assignment_seed_for(seed);
        const CollectionStrategy mpla = MplaStrategy{cfg.mpla_thresholds};

        for (std::size_t pi = 0; pi < penetrations.size(); ++pi) {
            const double pen = penetrations[pi];
            const double ratio =
                collect_uploads(sim, pen, mpla, 1, assign).realized_ratio();
            const int stride =
                std::max(1, static_cast<int>(std::lround(1.0 / std::max(ratio, 1e-6))));
            const double cs_ratio = std::clamp(ratio, 1e-6, 1.0);
            const std::vector<CollectionStrategy> strategies = {
                ConventionalStrategy{}, UniformStrategy{stride},
                CompressiveStrategy{cs_ratio, cs_seed_for(seed)}, mpla};

            for (std::size_t si = 0; si < strategies.size(); ++si) {
                Uploads up = collect_uploads(sim, pen, strategies[si], capacity, assign,
                                             cfg.flush_at_horizon);
                EstimateResult est =
                    estimate_travel_time(sim, up, strategies[si], cfg.cs_solver, cfg.jobs);
                RelErrResult e = relative_error(exact, est.grid);
                CellAccum& a = acc[si][pi];
                if (e.defined) {
                    a.e_sum += e.value;
                    a.e_count += 1;
                }
                a.excluded += e.excluded_cells;
                a.ratio_sum += up.realized_ratio();
            }
        }
    }

    std::vector<ExperimentCell> cells;
    for (std::size_t si = 0; si < names.size(); ++si) {
        for (std::size_t pi = 0; pi < penetrations.size(); ++pi) {
            const CellAccum& a = acc[si][pi];
            ExperimentCell cell;
            cell.strategy = names[si];
            cell.param = penetrations[pi];
            cell.e_r = a.e_count > 0 ? a.e_sum / a.e_count : std::nan("");
            cell.excluded_cells = a.excluded;
            cell.realized_ratio = a.ratio_sum / static_cast<double>(cfg.seeds.size());
            cells.push_back(std::move(cell));
        }
    }
    return cells;
}

}  // namespace cvc
