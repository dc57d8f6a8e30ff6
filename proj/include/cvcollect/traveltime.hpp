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

#ifndef CVCOLLECT_TRAVELTIME_HPP
#define CVCOLLECT_TRAVELTIME_HPP

#include <string>
#include <vector>

#include "cvcollect/sim.hpp"
#include "cvcollect/solver.hpp"

namespace cvc {

// Section-by-period grid of travel times (seconds). Periods exclude the
// warm-up window; cells with no contributing data are flagged.
struct TtGrid {
    int n_sections = 0;
    int n_periods = 0;
    std::vector<double> value;    // row-major [section][period]
    std::vector<bool> flagged;

    double& at(int s, int p) { return value[s * n_periods + p]; }
    double at(int s, int p) const { return value[s * n_periods + p]; }
    void flag(int s, int p) { flagged[s * n_periods + p] = true; }
    bool is_flagged(int s, int p) const { return flagged[s * n_periods + p]; }
};

TtGrid make_grid(const FreewayConfig& cfg);

// Exact travel times: per vehicle per section, exit time minus entry time,
// attributed to the period containing the section entry; cell = mean.
TtGrid exact_travel_time(const SimResult& sim);

// The same per-step mean-speed statistic the estimator computes, applied to
// complete ground truth. Reference grid for the full-information check.
TtGrid speed_grid_from_truth(const SimResult& sim);

struct EstimateResult {
    TtGrid grid;
    int empty_blocks = 0;
    int nonconverged_blocks = 0;
};

// Center-side estimate: reconstruct per-vehicle speed and position from the
// uploaded fragments (decoded per strategy), take per-step mean speeds of
// covered vehicles per section, average steps with nonzero coverage per
// period, and convert via T = l / v. Never-covered cells are flagged.
EstimateResult estimate_travel_time(const SimResult& sim, const Uploads& uploads,
                                    const CollectionStrategy& strategy,
                                    const BpSolverConfig& cs_solver, int jobs = 1);

struct RelErrResult {
    double value = 0.0;
    int excluded_cells = 0;
    bool defined = true;
};

// Mean relative cell error |T~ - T| / T over cells unflagged in both grids.
RelErrResult relative_error(const TtGrid& exact, const TtGrid& estimate);

struct ExperimentCell {
    std::string strategy;
    double param = 0.0;      // capacity or penetration
    double e_r = 0.0;        // mean over seeds
    int excluded_cells = 0;  // summed over seeds
    double realized_ratio = 0.0;
};

struct ExperimentConfig {
    FreewayConfig freeway;
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
    ThresholdConfig mpla_thresholds{{2.0, 2e-4, 2e-4}, 200};
    // experiment-grade solver budget: cheap per block, non-convergence counted
    BpSolverConfig cs_solver{300, 1e-6, 1e-4, 1.0};
    int jobs = 1;
    bool flush_at_horizon = false;
};

// Relative travel-time error per (strategy, OBU capacity) at fixed
// penetration. The linear-filter codec's realized collection ratio is imposed
// on the baselines: stride = round(1/ratio), Bernoulli probability = ratio.
std::vector<ExperimentCell> capacity_experiment(const ExperimentConfig& cfg, double penetration,
                                                const std::vector<int>& capacities);

// Relative error per (strategy, penetration) at fixed OBU capacity.
std::vector<ExperimentCell> penetration_experiment(const ExperimentConfig& cfg, int capacity,
                                                   const std::vector<double>& penetrations);

}  // namespace cvc

#endif
