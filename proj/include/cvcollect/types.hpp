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

#ifndef CVCOLLECT_TYPES_HPP
#define CVCOLLECT_TYPES_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cvc {

// Timestamps are integer deci-seconds so the 0.1 s cadence test is exact.
using DeciSeconds = std::int64_t;

constexpr double kTickSeconds = 0.1;

inline double to_seconds(DeciSeconds t) { return static_cast<double>(t) * kTickSeconds; }

inline DeciSeconds to_deciseconds(double seconds) {
    return static_cast<DeciSeconds>(seconds < 0 ? seconds * 10.0 - 0.5 : seconds * 10.0 + 0.5);
}

// One timestamped d-dimensional telemetry record. By convention
// values[0] = speed (m/s), values[1] = latitude (deg), values[2] = longitude (deg).
struct Sample {
    DeciSeconds t = 0;
    std::vector<double> values;

    double seconds() const { return to_seconds(t); }
};

// Ordered sequence of Samples at fixed 0.1 s cadence for one vehicle journey.
struct Trip {
    std::string vehicle_id;
    std::vector<Sample> samples;

    std::size_t size() const { return samples.size(); }
    std::size_t dim() const { return samples.empty() ? 0 : samples.front().values.size(); }

    // Extracts one dimension as a plain vector.
    std::vector<double> column(std::size_t dim_index) const {
        std::vector<double> out;
        out.reserve(samples.size());
        for (const Sample& s : samples) out.push_back(s.values.at(dim_index));
        return out;
    }
};

// Per-dimension error thresholds and the max segment length cap.
struct ThresholdConfig {
    std::vector<double> epsilons;
    int max_segment_length = 2;  // K

    std::size_t dim() const { return epsilons.size(); }

    void validate() const {
        if (epsilons.empty()) throw std::invalid_argument("ThresholdConfig: empty epsilon vector");
        for (double e : epsilons)
            if (!(e > 0.0)) throw std::invalid_argument("ThresholdConfig: epsilons must be > 0");
        if (max_segment_length < 2) throw std::invalid_argument("ThresholdConfig: K must be >= 2");
    }
};

// The subset of samples an encoder emits. Indices are 1-based and sorted.
struct Transmission {
    std::vector<std::size_t> indices;
    std::vector<Sample> payload;

    double collection_ratio(std::size_t total) const {
        if (total == 0) throw std::invalid_argument("Transmission: total sample count is zero");
        return static_cast<double>(indices.size()) / static_cast<double>(total);
    }
};

}  // namespace cvc

#endif
