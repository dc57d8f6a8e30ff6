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

#ifndef CVCOLLECT_SOLVER_HPP
#define CVCOLLECT_SOLVER_HPP

#include <Eigen/Dense>

namespace cvc {

struct BpSolverConfig {
    int max_iters = 5000;
    double abs_tol = 1e-8;
    double rel_tol = 1e-6;
    double penalty = 1.0;  // augmented-Lagrangian rho

    void validate() const;
};

struct BpResult {
    Eigen::VectorXd alpha;
    bool converged = false;
    int iterations = 0;
};

// Equality-constrained basis pursuit
//     min ||alpha||_1   s.t.   theta * alpha = y
// solved by ADMM: alternate an exact projection onto the constraint set with
// soft-thresholding. When theta has dependent rows the projection falls back
// to the least-squares-feasible affine set. Non-convergence within max_iters
// is flagged in the result, never silently dropped.
BpResult basis_pursuit(const Eigen::MatrixXd& theta, const Eigen::VectorXd& y,
                       const BpSolverConfig& cfg);

}  // namespace cvc

#endif
