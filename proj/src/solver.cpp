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

#include "cvcollect/solver.hpp"

#include <cmath>
#include <stdexcept>

namespace cvc {

void BpSolverConfig::validate() const {
    if (max_iters < 1 || !(abs_tol > 0) || !(rel_tol > 0) || !(penalty > 0))
        throw std::invalid_argument("BpSolverConfig: all parameters must be positive");
}

namespace {

Eigen::VectorXd soft_threshold(const Eigen::VectorXd& v, double kappa) {
    Eigen::VectorXd out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double a = v[i];
        out[i] = (a > kappa) ? a - kappa : (a < -kappa ? a + kappa : 0.0);
    }
    return out;
}

}  // namespace

BpResult basis_pursuit(const Eigen::MatrixXd& theta, const Eigen::VectorXd& y,
                       const BpSolverConfig& cfg) {
    cfg.validate();
    if (theta.rows() < 1 || theta.rows() != y.size())
        throw std::invalid_argument("basis_pursuit: shape mismatch");

    const Eigen::Index n = theta.cols();
    const double rho = cfg.penalty;
    const double sqrt_n = std::sqrt(static_cast<double>(n));

    // minimum-norm solve handles rank-deficient theta too
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(theta);

    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd u = Eigen::VectorXd::Zero(n);

    BpResult result;
    for (int k = 0; k < cfg.max_iters; ++k) {
        // project z - u onto {x : theta x = y}
        Eigen::VectorXd v = z - u;
        x = v - cod.solve(theta * v - y);

        Eigen::VectorXd z_old = z;
        z = soft_threshold(x + u, 1.0 / rho);
        u += x - z;

        const double r_norm = (x - z).norm();
        const double s_norm = rho * (z - z_old).norm();
        const double eps_pri = sqrt_n * cfg.abs_tol + cfg.rel_tol * std::max(x.norm(), z.norm());
        const double eps_dual = sqrt_n * cfg.abs_tol + cfg.rel_tol * rho * u.norm();
        if (r_norm <= eps_pri && s_norm <= eps_dual) {
            result.converged = true;
            result.iterations = k + 1;
            break;
        }
        result.iterations = k + 1;
    }
    // x lies on the constraint set (up to factorization accuracy); report it
    result.alpha = x;
    return result;
}

}  // namespace cvc
