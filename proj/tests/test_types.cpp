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

#include "cvcollect/types.hpp"
#include "doctest.h"

using namespace cvc;

TEST_CASE("deci-second timestamps round-trip through seconds") {
    for (DeciSeconds t : {DeciSeconds{0}, DeciSeconds{1}, DeciSeconds{12345},
                          DeciSeconds{-7}, DeciSeconds{863999}}) {
        CHECK(to_deciseconds(to_seconds(t)) == t);
    }
    CHECK(to_deciseconds(0.1) == 1);
    CHECK(to_deciseconds(0.3) == 3);  // exact despite 0.3 being inexact in binary
}

TEST_CASE("trip columns extract one dimension in order") {
    Trip trip;
    trip.samples = {{0, {1.0, 10.0}}, {1, {2.0, 20.0}}, {2, {3.0, 30.0}}};
    CHECK(trip.dim() == 2);
    CHECK(trip.column(0) == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(trip.column(1) == std::vector<double>{10.0, 20.0, 30.0});
}

TEST_CASE("threshold configs must be positive with a cap of at least two") {
    ThresholdConfig ok{{0.5, 1e-4}, 2};
    CHECK_NOTHROW(ok.validate());
    CHECK_THROWS(ThresholdConfig{{}, 5}.validate());
    CHECK_THROWS(ThresholdConfig{{0.0}, 5}.validate());
    CHECK_THROWS(ThresholdConfig{{-1.0}, 5}.validate());
    CHECK_THROWS(ThresholdConfig{{1.0}, 1}.validate());
}

TEST_CASE("collection ratio is the transmitted share") {
    Transmission tx;
    tx.indices = {1, 2, 5};
    tx.payload.resize(3);
    CHECK(tx.collection_ratio(5) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(tx.collection_ratio(3) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS(tx.collection_ratio(0));
}
