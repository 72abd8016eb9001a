// Copyright 2026 The shorsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "shorsim/errmodel.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace shorsim {

namespace {

constexpr uint64_t kZeroSeedReplacement = 0x9E3779B97F4A7C15ULL;
constexpr uint64_t kMultiplier = 2685821657736338717ULL;
constexpr uint64_t kPhaseStream = 0x50484153455F5354ULL;
constexpr uint64_t kAmplitudeStream = 0x414D504C49545544ULL;
constexpr uint64_t kRealizationStride = 0xD1B54A32D192ED03ULL;

std::vector<double> sample_errors(const ErrorModel &model, size_t count, uint64_t stream_seed) {
    model.validate();
    if (count == 0) {
        throw std::invalid_argument("error sampling requires count >= 1");
    }
    std::vector<double> out(count, 0.0);
    switch (model.mode) {
        case ErrorMode::None:
            break;
        case ErrorMode::Systematic:
            std::fill(out.begin(), out.end(), model.delta0);
            break;
        case ErrorMode::Uniform: {
            Rng rng(stream_seed);
            for (auto &v : out) {
                v = model.delta0 + (2.0 * rng.uniform01() - 1.0) * model.s_max;
            }
            break;
        }
        case ErrorMode::Gaussian: {
            Rng rng(stream_seed);
            for (auto &v : out) {
                v = model.delta0 + model.sigma0 * rng.gaussian();
            }
            break;
        }
    }
    return out;
}

}  // namespace

std::string_view to_string(ErrorMode mode) {
    switch (mode) {
        case ErrorMode::None:
            return "none";
        case ErrorMode::Systematic:
            return "systematic";
        case ErrorMode::Uniform:
            return "uniform";
        case ErrorMode::Gaussian:
            return "gaussian";
    }
    return "?";
}

std::optional<ErrorMode> parse_error_mode(std::string_view text) {
    for (auto mode : {ErrorMode::None, ErrorMode::Systematic, ErrorMode::Uniform, ErrorMode::Gaussian}) {
        if (text == to_string(mode)) {
            return mode;
        }
    }
    return std::nullopt;
}

void ErrorModel::validate() const {
    if (!std::isfinite(delta0) || !std::isfinite(s_max) || !std::isfinite(sigma0) || !std::isfinite(init_delta)) {
        throw std::invalid_argument("error model magnitudes must be finite");
    }
    if (s_max < 0) {
        throw std::invalid_argument("s_max must be >= 0");
    }
    if (sigma0 < 0) {
        throw std::invalid_argument("sigma0 must be >= 0");
    }
}

std::string ErrorModel::describe() const {
    std::ostringstream ss;
    ss.precision(17);
    ss << to_string(mode) << "(delta0=" << delta0 << ",s_max=" << s_max << ",sigma0=" << sigma0
       << ",amplitude_errors=" << (include_amplitude_errors ? 1 : 0) << ",init_delta=" << init_delta << ")";
    return ss.str();
}

RngState::RngState(uint64_t state) : state_(state) {
    if (state == 0) {
        throw std::invalid_argument("xorshift64* state must be nonzero");
    }
}

RngState RngState::from_seed(uint64_t seed) {
    return RngState(seed == 0 ? kZeroSeedReplacement : seed);
}

Draw<uint64_t> rng_next_u64(RngState state) {
    uint64_t x = state.value();
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    return {RngState(x), x * kMultiplier};
}

Draw<double> rng_uniform_01(RngState state) {
    auto [next, bits] = rng_next_u64(state);
    return {next, static_cast<double>(bits >> 11) * 0x1.0p-53};
}

Draw<double> rng_gaussian(RngState state) {
    auto first = rng_uniform_01(state);
    auto second = rng_uniform_01(first.state);
    double u1 = 1.0 - first.value;
    double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * second.value);
    return {second.state, z};
}

uint64_t Rng::next_u64() {
    auto d = rng_next_u64(state_);
    state_ = d.state;
    return d.value;
}

double Rng::uniform01() {
    auto d = rng_uniform_01(state_);
    state_ = d.state;
    return d.value;
}

double Rng::gaussian() {
    auto d = rng_gaussian(state_);
    state_ = d.state;
    return d.value;
}

uint64_t mix_seed(uint64_t value) {
    return rng_next_u64(RngState::from_seed(value)).value;
}

uint64_t derive_seed(uint64_t master_seed, uint64_t index) {
    return mix_seed(master_seed ^ (kRealizationStride * (index + 1)));
}

std::vector<double> sample_phase_errors(const ErrorModel &model, size_t count, uint64_t seed) {
    return sample_errors(model, count, mix_seed(seed ^ kPhaseStream));
}

std::vector<double> sample_amplitude_errors(const ErrorModel &model, size_t count, uint64_t seed) {
    if (!model.include_amplitude_errors) {
        model.validate();
        if (count == 0) {
            throw std::invalid_argument("error sampling requires count >= 1");
        }
        return std::vector<double>(count, 0.0);
    }
    return sample_errors(model, count, mix_seed(seed ^ kAmplitudeStream));
}

}  // namespace shorsim
