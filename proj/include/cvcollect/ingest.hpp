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

#ifndef CVCOLLECT_INGEST_HPP
#define CVCOLLECT_INGEST_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cvcollect/types.hpp"

namespace cvc {

// Maps the roles the pipeline needs to CSV column names.
struct ColumnMap {
    std::string vehicle_id = "device_id";
    std::string timestamp = "timestamp";
    std::string speed = "speed";
    std::string latitude = "latitude";
    std::string longitude = "longitude";
};

struct BsmRecord {
    std::string vehicle_id;
    Sample sample;
};

struct ParseResult {
    std::vector<BsmRecord> records;
    std::size_t skipped_rows = 0;
};

// Reads a BSM-style CSV (header required). Rows whose mapped fields fail to
// parse are skipped and counted, not fatal; a missing mapped column is fatal.
ParseResult parse_bsm_csv(const std::string& path, const ColumnMap& columns = {});

struct SegmentationResult {
    std::vector<Trip> trips;
    std::size_t dropped_short_trips = 0;
};

// Splits per-vehicle record streams into trips: a timestamp gap strictly
// larger than gap_threshold_s terminates the current trip. Records are sorted
// by time within each vehicle first. Trips shorter than 2 samples are dropped.
SegmentationResult segment_trips(const std::vector<BsmRecord>& records,
                                 double gap_threshold_s = 0.1);

enum class SynthKind { Constant, Linear, RandomWalk, Step };

SynthKind synth_kind_from_string(const std::string& name);

struct SynthParams {
    // constant: value applies to speed
    double value = 10.0;
    // linear: speed slope per step
    double slope = 1.0;
    // random_walk: per-step standard deviations
    double speed_step_sigma = 0.15;
    double coord_step_sigma = 1e-5;
    // step: jump of this size at the midpoint
    double step_magnitude = 10.0;
};

// Deterministic d=3 synthetic trip (speed, latitude, longitude) with plausible
// magnitudes: speed in [0, 35] m/s, coordinates near a fixed origin.
Trip synth_trip(SynthKind kind, std::size_t n, std::uint64_t seed, const SynthParams& params = {});

}  // namespace cvc

#endif
