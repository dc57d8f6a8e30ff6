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

#include <algorithm>
#include <cmath>
#include <vector>

#include "cvcollect/dct.hpp"
#include "cvcollect/rng.hpp"
#include "doctest.h"

using namespace cvc;

namespace {

std::vector<double> random_vector(std::size_t n, Rng& rng) {
    std::vector<double> x(n);
    for (double& v : x) v = rng.normal();
    return x;
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double l2(const std::vector<double>& a) {
    double s = 0.0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("forward transform of [1,1] is [sqrt(2), 0]") {
    DctCoefficients a = dct_forward({1.0, 1.0});
    CHECK(a.alpha[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(std::abs(a.alpha[1]) < 1e-12);
}

TEST_CASE("forward transform of [1,0] is [1/sqrt(2), cos(pi/4)]") {
    DctCoefficients a = dct_forward({1.0, 0.0});
    CHECK(a.alpha[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(a.alpha[1] == doctest::Approx(std::cos(M_PI / 4.0)).epsilon(1e-12));
}

TEST_CASE("constant signal concentrates in the first coefficient") {
    for (std::size_t n : {1u, 2u, 5u, 64u, 200u}) {
        const double c = 3.25;
        DctCoefficients a = dct_forward(std::vector<double>(n, c));
        CHECK(a.alpha[0] ==
              doctest::Approx(c * std::sqrt(static_cast<double>(n))).epsilon(1e-12));
        for (std::size_t i = 1; i < n; ++i) CHECK(std::abs(a.alpha[i]) < 1e-10);
    }
}

TEST_CASE("first-coefficient impulse inverts to a constant vector") {
    DctCoefficients a;
    a.alpha = {1.0, 0.0, 0.0, 0.0};
    std::vector<double> x = dct_inverse(a);
    for (double v : x) CHECK(v == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("inverse of [sqrt(2), 0] is [1,1]") {
    DctCoefficients a;
    a.alpha = {std::sqrt(2.0), 0.0};
    std::vector<double> x = dct_inverse(a);
    CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("round trip is the identity for a spread of lengths") {
    Rng rng(11);
    for (std::size_t n : {1u, 2u, 7u, 200u, 512u}) {
        for (int rep = 0; rep < 10; ++rep) {
            std::vector<double> x = random_vector(n, rng);
            std::vector<double> back = dct_inverse(dct_forward(x));
            CHECK(sup_diff(x, back) < 1e-9);
        }
    }
}

TEST_CASE("transform preserves the l2 norm") {
    Rng rng(12);
    for (std::size_t n : {1u, 2u, 7u, 200u}) {
        std::vector<double> x = random_vector(n, rng);
        DctCoefficients a = dct_forward(x);
        CHECK(l2(a.alpha) == doctest::Approx(l2(x)).epsilon(1e-9));
    }
}

TEST_CASE("transform is linear") {
    Rng rng(13);
    const std::size_t n = 31;
    std::vector<double> x = random_vector(n, rng);
    std::vector<double> y = random_vector(n, rng);
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = 2.5 * x[i] - 0.75 * y[i];
    DctCoefficients ax = dct_forward(x), ay = dct_forward(y), az = dct_forward(z);
    for (std::size_t i = 0; i < n; ++i)
        CHECK(az.alpha[i] ==
              doctest::Approx(2.5 * ax.alpha[i] - 0.75 * ay.alpha[i]).epsilon(1e-9));
}

TEST_CASE("basis matrix is orthonormal") {
    for (std::size_t n : {1u, 2u, 16u, 200u}) {
        Eigen::MatrixXd psi = dct_matrix(n);
        Eigen::MatrixXd gram = psi * psi.transpose();
        CHECK((gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("truncation keeps the largest-magnitude entries") {
    DctCoefficients a;
    a.alpha = {3.0, -5.0, 1.0};
    DctCoefficients t = dct_truncate(a, 2);
    CHECK(t.alpha == std::vector<double>{3.0, -5.0, 0.0});
}

TEST_CASE("truncation at full width is lossless") {
    DctCoefficients a;
    a.alpha = {0.5, -0.25, 2.0, 0.0};
    CHECK(dct_truncate(a, 4).alpha == a.alpha);
}

TEST_CASE("truncation ties keep the lower index") {
    DctCoefficients a;
    a.alpha = {1.0, -2.0, 2.0, -1.0};
    DctCoefficients t = dct_truncate(a, 3);
    // the |1.0| tie between indices 0 and 3 resolves to index 0
    CHECK(t.alpha == std::vector<double>{1.0, -2.0, 2.0, 0.0});
}

TEST_CASE("truncated coefficients are the l2-optimal sparse approximation") {
    Rng rng(14);
    for (std::size_t n : {4u, 6u, 8u}) {
        for (std::size_t s = 1; s <= 3; ++s) {
            std::vector<double> x = random_vector(n, rng);
            DctCoefficients a = dct_forward(x);
            DctCoefficients best = dct_truncate(a, s);
            std::vector<double> xhat = dct_inverse(best);
            const double chosen = l2([&] {
                std::vector<double> d(n);
                for (std::size_t i = 0; i < n; ++i) d[i] = x[i] - xhat[i];
                return d;
            }());

            // brute force over every support of size s
            std::vector<std::size_t> idx(n);
            for (std::size_t i = 0; i < n; ++i) idx[i] = i;
            std::vector<bool> pick(n, false);
            std::fill(pick.begin(), pick.begin() + s, true);
            double best_err = 1e300;
            do {
                DctCoefficients cand;
                cand.alpha.assign(n, 0.0);
                for (std::size_t i = 0; i < n; ++i)
                    if (pick[i]) cand.alpha[i] = a.alpha[i];
                std::vector<double> rec = dct_inverse(cand);
                double err = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                    err += (x[i] - rec[i]) * (x[i] - rec[i]);
                best_err = std::min(best_err, std::sqrt(err));
            } while (std::prev_permutation(pick.begin(), pick.end()));
            CHECK(chosen <= best_err + 1e-9);
        }
    }
}

TEST_CASE("degenerate arguments are rejected") {
    CHECK_THROWS(dct_forward({}));
    DctCoefficients a;
    a.alpha = {1.0, 2.0};
    CHECK_THROWS(dct_truncate(a, 0));
    CHECK_THROWS(dct_truncate(a, 3));
}
