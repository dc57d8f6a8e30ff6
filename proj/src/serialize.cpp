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

#include "cvcollect/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace cvc {

using nlohmann::json;

std::string format_double(double v) {
    // try increasing precision until the value round-trips
    char buf[64];
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        // plain integers beat "5e+01"
        std::snprintf(buf, sizeof(buf), "%.0f", v);
        return buf;
    }
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

namespace {

std::string timestamp_string(DeciSeconds t) {
    // fixed one-decimal form, e.g. "12.3"
    const bool neg = t < 0;
    const DeciSeconds a = neg ? -t : t;
    std::string s = (neg ? "-" : "") + std::to_string(a / 10) + "." + std::to_string(a % 10);
    return s;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

}  // namespace

void write_trip_csv(const std::string& path, const Trip& trip) {
    std::ofstream out = open_out(path);
    out << "device_id,timestamp,speed,latitude,longitude\n";
    for (const Sample& s : trip.samples) {
        out << trip.vehicle_id << ',' << timestamp_string(s.t);
        for (double v : s.values) out << ',' << format_double(v);
        out << '\n';
    }
}

void write_trip_manifest(const std::string& path, const Trip& trip, const std::string& trip_id) {
    json j;
    j["trip_id"] = trip_id;
    j["vehicle_id"] = trip.vehicle_id;
    j["n"] = trip.size();
    j["d"] = trip.dim();
    j["start_timestamp"] = to_seconds(trip.samples.front().t);
    j["end_timestamp"] = to_seconds(trip.samples.back().t);
    std::ofstream out = open_out(path);
    out << j.dump(2) << '\n';
}

void write_transmission(const std::string& csv_path, const std::string& json_path,
                        const Transmission& tx, const TransmissionHeader& header) {
    std::ofstream out = open_out(csv_path);
    out << "index,timestamp";
    for (std::size_t i = 1; i <= header.d; ++i) out << ",v" << i;
    out << '\n';
    for (std::size_t k = 0; k < tx.indices.size(); ++k) {
        out << tx.indices[k] << ',' << timestamp_string(tx.payload[k].t);
        for (double v : tx.payload[k].values) out << ',' << format_double(v);
        out << '\n';
    }

    json j;
    j["n"] = header.n;
    j["d"] = header.d;
    j["strategy"] = header.strategy;
    j["k"] = header.max_segment_length;
    j["collection_ratio"] = header.collection_ratio;
    json eps = json::array();
    for (double e : header.epsilons) eps.push_back(e);
    j["epsilons"] = eps;
    if (header.mask_seed) j["mask_seed"] = *header.mask_seed;
    std::ofstream jout = open_out(json_path);
    jout << j.dump(2) << '\n';
}

LoadedTransmission read_transmission(const std::string& csv_path, const std::string& json_path) {
    LoadedTransmission loaded;

    std::ifstream jin(json_path);
    if (!jin) throw std::runtime_error("cannot open: " + json_path);
    json j = json::parse(jin);
    loaded.header.n = j.at("n").get<std::size_t>();
    loaded.header.d = j.at("d").get<std::size_t>();
    loaded.header.strategy = j.at("strategy").get<std::string>();
    loaded.header.max_segment_length = j.at("k").get<int>();
    loaded.header.collection_ratio = j.at("collection_ratio").get<double>();
    loaded.header.epsilons = j.at("epsilons").get<std::vector<double>>();
    if (j.contains("mask_seed")) loaded.header.mask_seed = j["mask_seed"].get<std::uint64_t>();

    std::ifstream in(csv_path);
    if (!in) throw std::runtime_error("cannot open: " + csv_path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty transmission csv: " + csv_path);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        std::getline(ss, field, ',');
        loaded.tx.indices.push_back(std::stoull(field));
        Sample s;
        std::getline(ss, field, ',');
        s.t = to_deciseconds(std::strtod(field.c_str(), nullptr));
        while (std::getline(ss, field, ',')) s.values.push_back(std::strtod(field.c_str(), nullptr));
        if (s.values.size() != loaded.header.d)
            throw std::runtime_error("transmission row dimension mismatch in " + csv_path);
        loaded.tx.payload.push_back(std::move(s));
    }
    return loaded;
}

std::uint64_t file_fingerprint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::uint64_t h = 1469598103934665603ull;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace cvc
