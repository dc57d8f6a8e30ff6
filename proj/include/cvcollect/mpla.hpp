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

#ifndef CVCOLLECT_MPLA_HPP
#define CVCOLLECT_MPLA_HPP

#include <optional>
#include <vector>

#include "cvcollect/types.hpp"

namespace cvc {

// Vehicle-side online multidimensional piecewise linear filter with disjoint
// segments. A line is pinned through the last two transmitted samples; as long
// as extrapolating that line stays within the per-dimension thresholds (and the
// segment is shorter than the cap K), incoming samples are skipped. On a
// violation the current sample and its successor are transmitted and the
// segment restarts from that exact pair.
//
// Batch encoder. The transmitted set always contains indices 1 and 2, and the
// final sample is always transmitted so the receiving side learns the trip
// ended with an exact terminal point.
Transmission mpla_encode(const Trip& trip, const ThresholdConfig& cfg);

// Center-side reconstruction: exact at transmitted indices, linear
// extrapolation from the last transmitted pair elsewhere. The slope is only
// ever taken from two consecutive exact samples of the same segment.
Trip mpla_decode(const Transmission& tx, std::size_t n, const ThresholdConfig& cfg);

// Incremental encoder. push() returns the samples to transmit for this step
// (possibly none); finish() must be called at trip end and returns the forced
// terminal transmission when the last sample was not already emitted.
// Folding push over a trip and then finish yields exactly mpla_encode's
// payload, in order.
class MplaStreamEncoder {
  public:
    explicit MplaStreamEncoder(ThresholdConfig cfg);

    std::vector<Sample> push(const Sample& x);
    std::vector<Sample> finish();

    bool initialized() const { return count_ >= 2; }

  private:
    ThresholdConfig cfg_;
    std::size_t count_ = 0;           // samples seen
    std::vector<double> delta_;       // slope per 0.1 s step
    std::vector<double> last_approx_; // X~_{t-1}
    int segment_len_ = 0;             // L
    bool pending_second_ = false;     // a violation emitted X_t; X_{t+1} is owed
    std::optional<Sample> prev_;      // most recent sample, for delta resets
    bool prev_emitted_ = false;
    bool finished_ = false;
};

}  // namespace cvc

#endif
