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

#include "cvcollect/dct.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cvc {

Eigen::MatrixXd dct_matrix(std::size_t n) {
    if (n == 0) throw std::invalid_argument("dct_matrix: n must be >= 1");
    const double scale = std::sqrt(2.0 / static_cast<double>(n));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXd psi(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double lambda = (i == 0) ? inv_sqrt2 : 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            psi(i, j) = scale * lambda *
                        std::cos(M_PI * (static_cast<double>(j) + 0.5) * static_cast<double>(i) /
                                 static_cast<double>(n));
        }
    }
    return psi;
}

DctCoefficients dct_forward(const std::vector<double>& x) {
    const std::size_t n = x.size();
    if (n == 0) throw std::invalid_argument("dct_forward: empty input");
    const double scale = std::sqrt(2.0 / static_cast<double>(n));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    DctCoefficients out;
    out.alpha.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double lambda = (i == 0) ? inv_sqrt2 : 1.0;
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            sum += x[j] * std::cos(M_PI * (static_cast<double>(j) + 0.5) * static_cast<double>(i) /
                                   static_cast<double>(n));
        }
        out.alpha[i] = scale * lambda * sum;
    }
    return out;
}

std::vector<double> dct_inverse(const DctCoefficients& alpha) {
    const std::size_t n = alpha.size();
    if (n == 0) throw std::invalid_argument("dct_inverse: empty coefficients");
    const double scale = std::sqrt(2.0 / static_cast<double>(n));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double lambda = (j == 0) ? inv_sqrt2 : 1.0;
            sum += alpha.alpha[j] * lambda *
                   std::cos(M_PI * (static_cast<double>(i) + 0.5) * static_cast<double>(j) /
                            static_cast<double>(n));
        }
        x[i] = scale * sum;
    }
    return x;
}

DctCoefficients dct_truncate(const DctCoefficients& alpha, std::size_t s) {
    const std::size_t n = alpha.size();
    if (s < 1 || s > n) throw std::invalid_argument("dct_truncate: s out of range");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    // stable sort keeps the lower index on |alpha| ties
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(alpha.alpha[a]) > std::abs(alpha.alpha[b]);
    });
    DctCoefficients out;
    out.alpha.assign(n, 0.0);
    for (std::size_t k = 0; k < s; ++k) {
        const std::size_t idx = order[k];
        out.alpha[idx] = alpha.alpha[idx];
    }
    return out;
}

}  // namespace cvc
