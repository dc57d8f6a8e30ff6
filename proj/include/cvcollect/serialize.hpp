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

#ifndef CVCOLLECT_SERIALIZE_HPP
#define CVCOLLECT_SERIALIZE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cvcollect/types.hpp"

namespace cvc {

// Shortest decimal form that parses back to the identical double.
std::string format_double(double v);

// Trip CSV with the default BSM columns, plus a sidecar JSON manifest.
void write_trip_csv(const std::string& path, const Trip& trip);
void write_trip_manifest(const std::string& path, const Trip& trip, const std::string& trip_id);

// Metadata stored next to a serialized Transmission.
struct TransmissionHeader {
    std::size_t n = 0;
    std::size_t d = 0;
    std::string strategy;                 // "mpla", "uniform", "cs", ...
    std::vector<double> epsilons;         // mpla only
    int max_segment_length = 0;           // mpla only
    double collection_ratio = 0.0;
    std::optional<std::uint64_t> mask_seed;  // cs only
};

// CSV of (index, t, v1..vd) plus a JSON header. Writing the parse of a
// well-formed pair reproduces it byte for byte.
void write_transmission(const std::string& csv_path, const std::string& json_path,
                        const Transmission& tx, const TransmissionHeader& header);

struct LoadedTransmission {
    Transmission tx;
    TransmissionHeader header;
};

LoadedTransmission read_transmission(const std::string& csv_path, const std::string& json_path);

// FNV-1a over a file's bytes; used by run manifests to pin outputs.
std::uint64_t file_fingerprint(const std::string& path);

}  // namespace cvc

#endif
