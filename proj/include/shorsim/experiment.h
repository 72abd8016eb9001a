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

#ifndef SHORSIM_EXPERIMENT_H
#define SHORSIM_EXPERIMENT_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "shorsim/errmodel.h"
#include "shorsim/numth.h"
#include "shorsim/spectrum.h"

namespace shorsim {

struct EnsembleResult {
    Spectrum mean;
    /// Population standard deviation per c.
    std::vector<double> stddev;
    /// Realizations actually evaluated; 1 for deterministic models.
    size_t realizations = 0;
    size_t requested_realizations = 0;
    uint64_t master_seed = 0;
};

/// Mean and spread of combined_spectrum over independent realizations.
///
/// Realization i uses derive_seed(master_seed, i). Spectra may be computed
/// concurrently but are folded into the mean in index order, so the result is
/// bit-identical for a given (instance, model, n, seed).
EnsembleResult ensemble_spectrum(
    const ShorInstance &inst, const ErrorModel &model, size_t n_realizations, uint64_t master_seed);

struct Peak {
    uint64_t position;
    double height;
};

struct PeakReport {
    std::vector<Peak> peaks;                 // ascending position
    std::vector<double> reference_positions;  // k q / r, k = 0..r-1
    std::vector<int64_t> shifts;              // one per peak, signed, minimal mod q
};

inline constexpr double kDefaultHeightFloorFraction = 0.1;

/// Cyclic local maxima at or above height_floor_fraction * max(P).
///
/// A plateau reports its first index. Each peak is matched to the nearest
/// reference position (cyclically).
PeakReport peak_report(const Spectrum &spectrum, double height_floor_fraction = kDefaultHeightFloorFraction);

/// The k highest peaks of a report, ordered by position.
std::vector<Peak> highest_peaks(const PeakReport &report, size_t k);

/// mask[c] is true when recover_order(c, ...) returns exactly r.
std::vector<bool> recovery_mask(const ShorInstance &inst, uint64_t multiplier_bound);

/// Probability that one measurement of the normalized spectrum yields r.
/// Throws std::invalid_argument for synthetic instances without (N, y).
double success_probability(const Spectrum &spectrum, uint64_t multiplier_bound = kDefaultMultiplierBound);
double success_probability(std::span<const double> values, const std::vector<bool> &mask);

struct SweepOptions {
    size_t n_realizations = 1;
    double eta = 0.5;
    uint64_t master_seed = 42;
    uint64_t multiplier_bound = kDefaultMultiplierBound;
    /// Remaining model fields (delta0 for random sweeps, flags); the swept field is overwritten.
    ErrorModel base;
};

struct SweepResult {
    ErrorMode mode = ErrorMode::None;
    std::vector<double> magnitudes;
    std::vector<double> success_probs;
    double baseline = 0.0;
    std::optional<double> threshold;
    double eta = 0.5;
    size_t realizations = 0;
};

/// `base` with the field driven by `mode` set to `magnitude`:
/// systematic -> delta0, uniform -> s_max, gaussian -> sigma0.
ErrorModel model_for_magnitude(ErrorMode mode, double magnitude, const ErrorModel &base = {});

/// Success probability over an ascending grid of error magnitudes.
///
/// The threshold is the last grid magnitude before success first drops below
/// eta * baseline, where the baseline is the error-free success probability.
/// It is absent when the baseline is zero or the first magnitude already fails.
SweepResult threshold_sweep(
    const ShorInstance &inst, ErrorMode mode, std::vector<double> magnitudes, const SweepOptions &options);

/// Mean over realizations of the total-variation distance to the error-free spectrum.
double mean_tv_from_noiseless(
    const ShorInstance &inst, const ErrorModel &model, size_t n_realizations, uint64_t master_seed);

}  // namespace shorsim

#endif
