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

#include "cvcollect/baselines.hpp"

#include <stdexcept>

#include "cvcollect/dct.hpp"
#include "cvcollect/rng.hpp"

namespace cvc {

Transmission uniform_encode(const Trip& trip, int stride) {
    if (stride < 1) throw std::invalid_argument("uniform_encode: stride must be >= 1");
    const std::size_t n = trip.size();
    if (n < 1) throw std::invalid_argument("uniform_encode: empty trip");

    Transmission tx;
    for (std::size_t idx = 1; idx <= n; idx += static_cast<std::size_t>(stride)) {
        tx.indices.push_back(idx);
        tx.payload.push_back(trip.samples[idx - 1]);
    }
    // trailing-edge consistency with the linear-filter codec
    if (tx.indices.back() != n) {
        tx.indices.push_back(n);
        tx.payload.push_back(trip.samples[n - 1]);
    }
    return tx;
}

Trip uniform_decode(const Transmission& tx, std::size_t n) {
    if (tx.indices.empty()) throw std::invalid_argument("uniform_decode: empty transmission");
    if (tx.indices[0] != 1) throw std::invalid_argument("uniform_decode: first index must be 1");
    for (std::size_t k = 0; k < tx.indices.size(); ++k)
        if (tx.indices[k] < 1 || tx.indices[k] > n)
            throw std::runtime_error("uniform_decode: index outside 1..N");

    const std::size_t d = tx.payload[0].values.size();
    const DeciSeconds t0 = tx.payload[0].t;

    Trip out;
    out.samples.resize(n);
    std::size_t seg = 0;  // current left endpoint in tx
    for (std::size_t t = 1; t <= n; ++t) {
        Sample& dst = out.samples[t - 1];
        dst.t = t0 + static_cast<DeciSeconds>(t - 1);
        while (seg + 1 < tx.indices.size() && tx.indices[seg + 1] <= t) ++seg;
        const std::size_t left = tx.indices[seg];
        if (t <= left || seg + 1 >= tx.indices.size()) {
            // at a transmitted sample, or past the last one: hold
            dst.values = tx.payload[seg].values;
        } else {
            const std::size_t right = tx.indices[seg + 1];
            const double w = static_cast<double>(t - left) / static_cast<double>(right - left);
            dst.values.resize(d);
            for (std::size_t i = 0; i < d; ++i)
                dst.values[i] =
                    (1.0 - w) * tx.payload[seg].values[i] + w * tx.payload[seg + 1].values[i];
        }
    }
    return out;
}

CsEncoded cs_select(const Trip& trip, double ratio, std::uint64_t seed, std::size_t block_len) {
    if (!(ratio > 0.0) || ratio > 1.0)
        throw std::invalid_argument("cs_select: ratio must be in (0, 1]");
    if (block_len < 1) throw std::invalid_argument("cs_select: block_len must be >= 1");
    const std::size_t n = trip.size();
    if (n < 1) throw std::invalid_argument("cs_select: empty trip");

    CsEncoded enc;
    enc.n = n;
    enc.dim = trip.dim();
    enc.t0 = trip.samples[0].t;
    enc.vehicle_id = trip.vehicle_id;
    enc.block_len = block_len;

    Rng rng(seed);
    for (std::size_t start = 0; start < n; start += block_len) {
        const std::size_t len = std::min(block_len, n - start);
        SelectionMask mask;
        mask.block_len = len;
        mask.seed = seed;
        for (std::size_t j = 0; j < len; ++j) {
            const bool take = rng.uniform() < ratio;
            if (take) {
                mask.selected.push_back(j + 1);
                enc.tx.indices.push_back(start + j + 1);
                enc.tx.payload.push_back(trip.samples[start + j]);
            }
        }
        enc.masks.push_back(std::move(mask));
    }
    return enc;
}

CsDecodeResult cs_decode(const CsEncoded& enc, const BpSolverConfig& cfg) {
    cfg.validate();
    CsDecodeResult result;
    result.trip.vehicle_id = enc.vehicle_id;
    result.trip.samples.resize(enc.n);
    for (std::size_t t = 0; t < enc.n; ++t) {
        result.trip.samples[t].t = enc.t0 + static_cast<DeciSeconds>(t);
        result.trip.samples[t].values.assign(enc.dim, 0.0);
    }

    std::size_t tx_cursor = 0;
    std::size_t start = 0;
    for (const SelectionMask& mask : enc.masks) {
        const std::size_t len = mask.block_len;
        const std::size_t m = mask.selected.size();
        if (m == 0) {
            result.empty_blocks += 1;
            start += len;
            continue;
        }

        // theta = D * Psi^T: the selected rows of the inverse-transform matrix
        const Eigen::MatrixXd psi = dct_matrix(len);
        Eigen::MatrixXd theta(m, len);
        for (std::size_t r = 0; r < m; ++r)
            theta.row(r) = psi.col(mask.selected[r] - 1).transpose();

        // one l1 problem per dimension
        for (std::size_t dim = 0; dim < enc.dim; ++dim) {
            Eigen::VectorXd y(m);
            for (std::size_t r = 0; r < m; ++r)
                y[r] = enc.tx.payload[tx_cursor + r].values[dim];
            BpResult bp = basis_pursuit(theta, y, cfg);
            if (!bp.converged) result.nonconverged_blocks += 1;
            Eigen::VectorXd xhat = psi.transpose() * bp.alpha;
            for (std::size_t j = 0; j < len; ++j)
                result.trip.samples[start + j].values[dim] = xhat[static_cast<Eigen::Index>(j)];
        }
        tx_cursor += m;
        start += len;
    }
    return result;
}

}  // namespace cvc
