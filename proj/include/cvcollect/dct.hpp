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

#ifndef CVCOLLECT_DCT_HPP
#define CVCOLLECT_DCT_HPP

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace cvc {

// DCT-II coefficients of an N-point signal.
struct DctCoefficients {
    std::vector<double> alpha;

    std::size_t size() const { return alpha.size(); }
};

// The unitary DCT-II matrix. Row i (0-based) holds
//   sqrt(2/N) * lambda_i * cos(pi * (j + 0.5) * i / N)
// with lambda_0 = 1/sqrt(2) and lambda_i = 1 otherwise.
Eigen::MatrixXd dct_matrix(std::size_t n);

// Forward transform by direct O(N^2) summation. Fast variants are deliberately
// avoided: blocks are at most a few hundred points and bit-stability matters.
DctCoefficients dct_forward(const std::vector<double>& x);

// Inverse transform (the transpose, since the matrix is unitary).
std::vector<double> dct_inverse(const DctCoefficients& alpha);

// Keeps the s entries largest in absolute value and zeroes the rest.
// Ties at the cutoff are broken by ascending index.
DctCoefficients dct_truncate(const DctCoefficients& alpha, std::size_t s);

}  // namespace cvc

#endif
