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

#ifndef SHORSIM_ERRMODEL_H
#define SHORSIM_ERRMODEL_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace shorsim {

enum class ErrorMode { None, Systematic, Uniform, Gaussian };

std::string_view to_string(ErrorMode mode);
std::optional<ErrorMode> parse_error_mode(std::string_view text);

/// Gate-error configuration. All magnitudes are in radians.
///
/// Uniform and Gaussian modes draw delta0 + s per term, so a nonzero delta0 in
/// those modes gives the combined systematic-plus-random case.
struct ErrorModel {
    ErrorMode mode = ErrorMode::None;
    double delta0 = 0.0;
    double s_max = 0.0;
    double sigma0 = 0.0;
    bool include_amplitude_errors = false;
    double init_delta = 0.0;

    /// Throws std::invalid_argument for negative widths or non-finite values.
    void validate() const;

    /// True when every draw is the same number (None, Systematic).
    bool is_deterministic() const {
        return mode == ErrorMode::None || mode == ErrorMode::Systematic;
    }

    std::string describe() const;

    static ErrorModel none() {
        return {};
    }
    static ErrorModel systematic(double delta0) {
        return {ErrorMode::Systematic, delta0, 0.0, 0.0, false, 0.0};
    }
    static ErrorModel uniform(double s_max, double delta0 = 0.0) {
        return {ErrorMode::Uniform, delta0, s_max, 0.0, false, 0.0};
    }
    static ErrorModel gaussian(double sigma0, double delta0 = 0.0) {
        return {ErrorMode::Gaussian, delta0, 0.0, sigma0, false, 0.0};
    }
};

/// xorshift64* generator state. Never zero.
class RngState {
   public:
    /// Throws std::invalid_argument for a zero state.
    explicit RngState(uint64_t state);

    /// Seeds a stream; seed 0 maps to a fixed nonzero constant.
    static RngState from_seed(uint64_t seed);

    uint64_t value() const {
        return state_;
    }
    bool operator==(const RngState &) const = default;

   private:
    uint64_t state_;
};

template <typename T>
struct Draw {
    RngState state;
    T value;
};

/// x ^= x >> 12; x ^= x << 25; x ^= x >> 27; output x * 2685821657736338717.
Draw<uint64_t> rng_next_u64(RngState state);
/// Top 53 bits of the next output, scaled into [0, 1).
Draw<double> rng_uniform_01(RngState state);
/// Box-Muller on two successive uniforms; the first is taken as 1 - u so the log is finite.
Draw<double> rng_gaussian(RngState state);

/// Mutable convenience wrapper over the value-semantics functions above.
class Rng {
   public:
    explicit Rng(RngState state) : state_(state) {
    }
    explicit Rng(uint64_t seed) : state_(RngState::from_seed(seed)) {
    }

    uint64_t next_u64();
    double uniform01();
    double gaussian();

    RngState state() const {
        return state_;
    }

   private:
    RngState state_;
};

/// One xorshift64* step applied to `value` (zero remapped), returning the output.
uint64_t mix_seed(uint64_t value);

/// Seed of realization `index` under `master_seed`.
uint64_t derive_seed(uint64_t master_seed, uint64_t index);

/// The phase errors delta'_j. Throws std::invalid_argument when count == 0.
std::vector<double> sample_phase_errors(const ErrorModel &model, size_t count, uint64_t seed);

/// The amplitude errors delta_j; all zeros unless include_amplitude_errors is set.
/// Drawn from a stream disjoint from the phase stream of the same seed.
std::vector<double> sample_amplitude_errors(const ErrorModel &model, size_t count, uint64_t seed);

}  // namespace shorsim

#endif
