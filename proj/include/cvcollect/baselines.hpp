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

#ifndef CVCOLLECT_BASELINES_HPP
#define CVCOLLECT_BASELINES_HPP

#include <cstdint>
#include <vector>

#include "cvcollect/solver.hpp"
#include "cvcollect/types.hpp"

namespace cvc {

// Default block length for compressive sampling: long trips are cut into
// sub-signals of this many points and each is recovered independently.
constexpr std::size_t kCsBlockLen = 200;

// Every stride-th sample starting from the first, plus the final sample.
Transmission uniform_encode(const Trip& trip, int stride);

// Linear interpolation between transmitted samples; values after the last
// transmitted index are held constant.
Trip uniform_decode(const Transmission& tx, std::size_t n);

// Which samples of one block were collected. Indices are 1-based within the block.
struct SelectionMask {
    std::vector<std::size_t> selected;
    std::size_t block_len = 0;
    std::uint64_t seed = 0;
};

// A compressively sampled trip: per-block masks plus the transmitted subset.
struct CsEncoded {
    std::vector<SelectionMask> masks;
    Transmission tx;
    std::size_t n = 0;
    std::size_t dim = 0;
    DeciSeconds t0 = 0;
    std::string vehicle_id;
    std::size_t block_len = kCsBlockLen;
};

// Bernoulli selection: each sample is kept independently with probability
// `ratio`, using the seeded generator. Deterministic for a fixed seed.
CsEncoded cs_select(const Trip& trip, double ratio, std::uint64_t seed,
                    std::size_t block_len = kCsBlockLen);

struct CsDecodeResult {
    Trip trip;
    int empty_blocks = 0;         // blocks with no selected sample, decoded as zeros
    int nonconverged_blocks = 0;  // l1 solves that hit the iteration cap
};

// Per-block, per-dimension l1 recovery in the DCT domain.
CsDecodeResult cs_decode(const CsEncoded& enc, const BpSolverConfig& cfg);

}  // namespace cvc

#endif
