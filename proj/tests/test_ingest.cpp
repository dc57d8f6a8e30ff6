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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "cvcollect/ingest.hpp"
#include "doctest.h"

using namespace cvc;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = (std::filesystem::temp_directory_path() / name).string();
    std::ofstream out(path);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("well-formed rows pass through in file order") {
    const std::string path = write_temp(
        "cvc_ok.csv",
        "device_id,timestamp,speed,latitude,longitude\n"
        "a,0.1,10.0,42.0,-83.0\n"
        "a,0.2,10.5,42.0001,-83.0\n"
        "b,0.1,9.0,42.1,-83.1\n");
    ParseResult r = parse_bsm_csv(path);
    REQUIRE(r.records.size() == 3);
    CHECK(r.skipped_rows == 0);
    CHECK(r.records[0].vehicle_id == "a");
    CHECK(r.records[0].sample.t == 1);
    CHECK(r.records[0].sample.values == std::vector<double>{10.0, 42.0, -83.0});
    CHECK(r.records[2].vehicle_id == "b");
    std::remove(path.c_str());
}

TEST_CASE("unparseable rows are skipped and counted") {
    const std::string path = write_temp(
        "cvc_bad.csv",
        "device_id,timestamp,speed,latitude,longitude\n"
        "a,0.1,abc,42.0,-83.0\n"
        "a,0.2,10.5,42.0,-83.0\n");
    ParseResult r = parse_bsm_csv(path);
    CHECK(r.records.size() == 1);
    CHECK(r.skipped_rows == 1);
    std::remove(path.c_str());
}

TEST_CASE("column order in the file is irrelevant") {
    const std::string a = write_temp(
        "cvc_order_a.csv",
        "device_id,timestamp,speed,latitude,longitude\n"
        "a,0.1,10.0,42.0,-83.0\n");
    const std::string b = write_temp(
        "cvc_order_b.csv",
        "longitude,speed,device_id,latitude,timestamp\n"
        "-83.0,10.0,a,42.0,0.1\n");
    ParseResult ra = parse_bsm_csv(a);
    ParseResult rb = parse_bsm_csv(b);
    REQUIRE(ra.records.size() == 1);
    REQUIRE(rb.records.size() == 1);
    CHECK(ra.records[0].vehicle_id == rb.records[0].vehicle_id);
    CHECK(ra.records[0].sample.t == rb.records[0].sample.t);
    CHECK(ra.records[0].sample.values == rb.records[0].sample.values);
    std::remove(a.c_str());
    std::remove(b.c_str());
}

TEST_CASE("a missing mapped column is fatal, a missing file is fatal") {
    const std::string path = write_temp("cvc_nocol.csv",
                                        "device_id,timestamp,speed\n"
                                        "a,0.1,10.0\n");
    CHECK_THROWS(parse_bsm_csv(path));
    CHECK_THROWS(parse_bsm_csv("/nonexistent/file.csv"));
    std::remove(path.c_str());
}

TEST_CASE("an unbroken cadence yields one trip") {
    std::vector<BsmRecord> records;
    for (int i = 0; i < 100; ++i)
        records.push_back({"v", {static_cast<DeciSeconds>(i), {1.0, 2.0, 3.0}}});
    SegmentationResult r = segment_trips(records);
    REQUIRE(r.trips.size() == 1);
    CHECK(r.trips[0].size() == 100);
    CHECK(r.trips[0].vehicle_id == "v");
}

TEST_CASE("a half-second gap splits the stream into two trips") {
    std::vector<BsmRecord> records;
    for (int i = 0; i < 5; ++i)
        records.push_back({"v", {static_cast<DeciSeconds>(i), {1.0}}});
    for (int i = 0; i < 5; ++i)
        records.push_back({"v", {static_cast<DeciSeconds>(9 + i), {1.0}}});
    SegmentationResult r = segment_trips(records);
    REQUIRE(r.trips.size() == 2);
    CHECK(r.trips[0].size() == 5);
    CHECK(r.trips[1].size() == 5);
}

TEST_CASE("interleaved vehicles partition by id") {
    std::vector<BsmRecord> records;
    for (int i = 0; i < 3; ++i) {
        records.push_back({"a", {static_cast<DeciSeconds>(i), {1.0}}});
        records.push_back({"b", {static_cast<DeciSeconds>(i), {2.0}}});
    }
    SegmentationResult r = segment_trips(records);
    REQUIRE(r.trips.size() == 2);
    CHECK(r.trips[0].vehicle_id == "a");
    CHECK(r.trips[1].vehicle_id == "b");
    CHECK(r.trips[0].samples[0].values[0] == 1.0);
    CHECK(r.trips[1].samples[0].values[0] == 2.0);
}

TEST_CASE("segmentation is a lossless partition of the kept records") {
    std::vector<BsmRecord> records;
    // vehicle with two trips and one that is dropped for being a singleton
    for (int i = 0; i < 4; ++i)
        records.push_back({"v", {static_cast<DeciSeconds>(i), {static_cast<double>(i)}}});
    for (int i = 0; i < 3; ++i)
        records.push_back({"v", {static_cast<DeciSeconds>(10 + i), {static_cast<double>(10 + i)}}});
    records.push_back({"v", {100, {99.0}}});
    SegmentationResult r = segment_trips(records);
    CHECK(r.dropped_short_trips == 1);
    REQUIRE(r.trips.size() == 2);

    std::vector<DeciSeconds> rebuilt;
    for (const Trip& trip : r.trips)
        for (const Sample& s : trip.samples) rebuilt.push_back(s.t);
    CHECK(rebuilt == std::vector<DeciSeconds>{0, 1, 2, 3, 10, 11, 12});
}

TEST_CASE("synthetic constant trips are constant") {
    Trip trip = synth_trip(SynthKind::Constant, 12, 1);
    for (const Sample& s : trip.samples) {
        CHECK(s.values == trip.samples[0].values);
    }
}

TEST_CASE("synthetic linear trips ramp the speed by the slope") {
    SynthParams p;
    p.slope = 1.0;
    Trip trip = synth_trip(SynthKind::Linear, 5, 1, p);
    for (int i = 0; i < 5; ++i)
        CHECK(trip.samples[i].values[0] == doctest::Approx(static_cast<double>(i)));
}

TEST_CASE("synthetic trips are pure functions of their arguments") {
    Trip a = synth_trip(SynthKind::RandomWalk, 200, 42);
    Trip b = synth_trip(SynthKind::RandomWalk, 200, 42);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.samples[i].values == b.samples[i].values);
    Trip c = synth_trip(SynthKind::RandomWalk, 200, 43);
    CHECK(a.samples[5].values != c.samples[5].values);
}

TEST_CASE("synthetic trips keep plausible magnitudes") {
    Trip trip = synth_trip(SynthKind::RandomWalk, 5000, 7);
    for (const Sample& s : trip.samples) {
        CHECK(s.values[0] >= 0.0);
        CHECK(s.values[0] <= 35.0);
        CHECK(std::abs(s.values[1] - 42.30) < 1.0);
        CHECK(std::abs(s.values[2] + 83.70) < 1.0);
    }
}

TEST_CASE("degenerate synthetic lengths are rejected") {
    CHECK_THROWS(synth_trip(SynthKind::Constant, 1, 1));
    CHECK_THROWS(synth_kind_from_string("nope"));
    CHECK(synth_kind_from_string("random_walk") == SynthKind::RandomWalk);
}
