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

#include "cvcollect/mpla.hpp"

#include <cmath>
#include <stdexcept>

namespace cvc {

namespace {

bool violates(const std::vector<double>& predicted, const std::vector<double>& actual,
              const std::vector<double>& epsilons, int segment_len, int max_segment_len) {
    if (segment_len > max_segment_len) return true;
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        // strict ">": an error exactly equal to epsilon does not transmit
        if (std::abs(predicted[i] - actual[i]) > epsilons[i]) return true;
    }
    return false;
}

std::vector<double> diff(const Sample& b, const Sample& a) {
    std::vector<double> d(b.values.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = b.values[i] - a.values[i];
    return d;
}

}  // namespace

Transmission mpla_encode(const Trip& trip, const ThresholdConfig& cfg) {
    cfg.validate();
    const std::size_t n = trip.size();
    if (n < 2) throw std::invalid_argument("mpla_encode: trip must have at least 2 samples");
    if (trip.dim() != cfg.dim()) throw std::invalid_argument("mpla_encode: dimension mismatch");

    const auto& s = trip.samples;
    Transmission tx;
    tx.indices = {1, 2};
    tx.payload = {s[0], s[1]};

    std::vector<double> delta = diff(s[1], s[0]);
    std::vector<double> approx = s[1].values;  // X~ at the previous step
    int segment_len = 2;

    std::size_t t = 3;  // 1-based
    while (t <= n) {
        std::vector<double> predicted(approx.size());
        for (std::size_t i = 0; i < predicted.size(); ++i) predicted[i] = approx[i] + delta[i];

        if (violates(predicted, s[t - 1].values, cfg.epsilons, segment_len,
                     cfg.max_segment_length)) {
            tx.indices.push_back(t);
            tx.payload.push_back(s[t - 1]);
            if (t < n) {
                tx.indices.push_back(t + 1);
                tx.payload.push_back(s[t]);
                delta = diff(s[t], s[t - 1]);
                approx = s[t].values;
                segment_len = 2;
                t += 2;
            } else {
                // violation at the last sample: no successor, transmit it alone
                t += 1;
            }
        } else {
            approx = predicted;
            segment_len += 1;
            t += 1;
        }
    }

    // trip-end rule: the terminal sample is always transmitted
    if (tx.indices.back() != n) {
        tx.indices.push_back(n);
        tx.payload.push_back(s[n - 1]);
    }
    return tx;
}

Trip mpla_decode(const Transmission& tx, std::size_t n, const ThresholdConfig& cfg) {
    cfg.validate();
    if (tx.indices.empty() || tx.indices.size() != tx.payload.size())
        throw std::invalid_argument("mpla_decode: malformed transmission");
    for (std::size_t k = 0; k < tx.indices.size(); ++k) {
        if (tx.indices[k] < 1 || tx.indices[k] > n)
            throw std::runtime_error("mpla_decode: index outside 1..N");
        if (k > 0 && tx.indices[k] <= tx.indices[k - 1])
            throw std::runtime_error("mpla_decode: indices not strictly increasing");
        if (tx.payload[k].values.size() != cfg.dim())
            throw std::invalid_argument("mpla_decode: dimension mismatch");
    }
    if (tx.indices[0] != 1) throw std::runtime_error("mpla_decode: first index must be 1");

    const std::size_t d = cfg.dim();
    const DeciSeconds t0 = tx.payload[0].t;

    Trip out;
    out.samples.resize(n);
    std::vector<double> delta(d, 0.0);
    std::vector<double> last(d, 0.0);
    std::size_t next = 0;  // cursor into tx
    bool prev_received = false;

    for (std::size_t t = 1; t <= n; ++t) {
        Sample& dst = out.samples[t - 1];
        dst.t = t0 + static_cast<DeciSeconds>(t - 1);
        if (next < tx.indices.size() && tx.indices[next] == t) {
            dst.values = tx.payload[next].values;
            // slope comes only from two consecutive exact samples of one segment
            if (prev_received && next > 0) {
                for (std::size_t i = 0; i < d; ++i)
                    delta[i] = tx.payload[next].values[i] - tx.payload[next - 1].values[i];
            }
            last = dst.values;
            prev_received = true;
            ++next;
        } else {
            for (std::size_t i = 0; i < d; ++i) last[i] += delta[i];
            dst.values = last;
            prev_received = false;
        }
    }
    return out;
}

MplaStreamEncoder::MplaStreamEncoder(ThresholdConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
}

std::vector<Sample> MplaStreamEncoder::push(const Sample& x) {
    if (finished_) throw std::logic_error("MplaStreamEncoder: push after finish");
    if (x.values.size() != cfg_.dim())
        throw std::invalid_argument("MplaStreamEncoder: dimension mismatch");

    std::vector<Sample> emitted;
    if (count_ == 0) {
        emitted.push_back(x);
        prev_emitted_ = true;
    } else if (count_ == 1) {
        emitted.push_back(x);
        delta_ = diff(x, *prev_);
        last_approx_ = x.values;
        segment_len_ = 2;
        prev_emitted_ = true;
    } else if (pending_second_) {
        // unconditionally the second half of a violation pair
        emitted.push_back(x);
        delta_ = diff(x, *prev_);
        last_approx_ = x.values;
        segment_len_ = 2;
        pending_second_ = false;
        prev_emitted_ = true;
    } else {
        std::vector<double> predicted(last_approx_.size());
        for (std::size_t i = 0; i < predicted.size(); ++i)
            predicted[i] = last_approx_[i] + delta_[i];
        if (violates(predicted, x.values, cfg_.epsilons, segment_len_, cfg_.max_segment_length)) {
            emitted.push_back(x);
            pending_second_ = true;
            prev_emitted_ = true;
        } else {
            last_approx_ = predicted;
            segment_len_ += 1;
            prev_emitted_ = false;
        }
    }
    prev_ = x;
    ++count_;
    return emitted;
}

std::vector<Sample> MplaStreamEncoder::finish() {
    if (finished_) throw std::logic_error("MplaStreamEncoder: finish called twice");
    finished_ = true;
    std::vector<Sample> emitted;
    if (prev_ && !prev_emitted_) emitted.push_back(*prev_);
    return emitted;
}

}  // namespace cvc
