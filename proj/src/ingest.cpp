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

#include "cvcollect/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cvcollect/rng.hpp"

namespace cvc {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

bool parse_double(const std::string& s, double& out) {
    const std::string t = trim(s);
    if (t.empty()) return false;
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size() && std::isfinite(out);
}

}  // namespace

ParseResult parse_bsm_csv(const std::string& path, const ColumnMap& columns) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("parse_bsm_csv: cannot open " + path);

    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("parse_bsm_csv: empty file " + path);

    std::vector<std::string> names = split_csv_line(header);
    for (std::string& n : names) n = trim(n);

    auto find_col = [&](const std::string& name) -> std::size_t {
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end())
            throw std::runtime_error("parse_bsm_csv: missing column '" + name + "' in " + path);
        return static_cast<std::size_t>(it - names.begin());
    };

    const std::size_t col_id = find_col(columns.vehicle_id);
    const std::size_t col_t = find_col(columns.timestamp);
    const std::size_t col_v = find_col(columns.speed);
    const std::size_t col_lat = find_col(columns.latitude);
    const std::size_t col_lon = find_col(columns.longitude);
    const std::size_t needed = std::max({col_id, col_t, col_v, col_lat, col_lon}) + 1;

    ParseResult result;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        std::vector<std::string> fields = split_csv_line(line);
        double ts, speed, lat, lon;
        if (fields.size() < needed || !parse_double(fields[col_t], ts) ||
            !parse_double(fields[col_v], speed) || !parse_double(fields[col_lat], lat) ||
            !parse_double(fields[col_lon], lon)) {
            result.skipped_rows += 1;
            continue;
        }
        BsmRecord rec;
        rec.vehicle_id = trim(fields[col_id]);
        rec.sample.t = to_deciseconds(ts);
        rec.sample.values = {speed, lat, lon};
        result.records.push_back(std::move(rec));
    }
    return result;
}

SegmentationResult segment_trips(const std::vector<BsmRecord>& records, double gap_threshold_s) {
    // group per vehicle, preserving first-seen vehicle order
    std::vector<std::string> order;
    std::map<std::string, std::vector<const BsmRecord*>> by_vehicle;
    for (const BsmRecord& r : records) {
        auto [it, inserted] = by_vehicle.try_emplace(r.vehicle_id);
        if (inserted) order.push_back(r.vehicle_id);
        it->second.push_back(&r);
    }

    SegmentationResult result;
    for (const std::string& id : order) {
        auto& recs = by_vehicle[id];
        std::stable_sort(recs.begin(), recs.end(),
                         [](const BsmRecord* a, const BsmRecord* b) {
                             return a->sample.t < b->sample.t;
                         });

        Trip current;
        current.vehicle_id = id;
        auto flush = [&]() {
            if (current.samples.size() >= 2) {
                Trip t;
                t.vehicle_id = id;
                t.samples = std::move(current.samples);
                result.trips.push_back(std::move(t));
            } else if (!current.samples.empty()) {
                result.dropped_short_trips += 1;
            }
            current.samples.clear();
        };

        for (const BsmRecord* r : recs) {
            if (!current.samples.empty()) {
                const DeciSeconds gap_ds = r->sample.t - current.samples.back().t;
                if (gap_ds <= 0) continue;  // duplicate timestamp, drop
                const double gap_s = to_seconds(gap_ds);
                if (gap_s > gap_threshold_s + 1e-6) flush();
            }
            current.samples.push_back(r->sample);
        }
        flush();
    }
    return result;
}

SynthKind synth_kind_from_string(const std::string& name) {
    if (name == "constant") return SynthKind::Constant;
    if (name == "linear") return SynthKind::Linear;
    if (name == "random_walk") return SynthKind::RandomWalk;
    if (name == "step") return SynthKind::Step;
    throw std::invalid_argument("unknown synthetic trip kind: " + name);
}

Trip synth_trip(SynthKind kind, std::size_t n, std::uint64_t seed, const SynthParams& params) {
    if (n < 2) throw std::invalid_argument("synth_trip: n must be >= 2");

    constexpr double kLat0 = 42.30;  // fixed origin
    constexpr double kLon0 = -83.70;

    Trip trip;
    trip.vehicle_id = "synthetic-" + std::to_string(seed);
    trip.samples.resize(n);

    Rng rng(seed);
    double speed = 15.0;
    double lat = kLat0;
    double lon = kLon0;
    for (std::size_t i = 0; i < n; ++i) {
        Sample& s = trip.samples[i];
        s.t = static_cast<DeciSeconds>(i);
        switch (kind) {
            case SynthKind::Constant:
                s.values = {params.value, kLat0, kLon0};
                break;
            case SynthKind::Linear:
                s.values = {params.slope * static_cast<double>(i),
                            kLat0 + 1e-6 * static_cast<double>(i),
                            kLon0 + 1e-6 * static_cast<double>(i)};
                break;
            case SynthKind::RandomWalk:
                if (i > 0) {
                    speed += rng.normal(0.0, params.speed_step_sigma);
                    speed = std::clamp(speed, 0.0, 35.0);
                    lat += rng.normal(0.0, params.coord_step_sigma);
                    lon += rng.normal(0.0, params.coord_step_sigma);
                }
                s.values = {speed, lat, lon};
                break;
            case SynthKind::Step: {
                const bool after = i >= n / 2;
                s.values = {10.0 + (after ? params.step_magnitude : 0.0),
                            kLat0 + 1e-6 * static_cast<double>(i), kLon0};
                break;
            }
        }
    }
    return trip;
}

}  // namespace cvc
