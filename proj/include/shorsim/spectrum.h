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

#ifndef SHORSIM_SPECTRUM_H
#define SHORSIM_SPECTRUM_H

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "shorsim/errmodel.h"
#include "shorsim/numth.h"

namespace shorsim {

enum class SpectrumMethod { Noiseless, DirectSum, ClosedForm, Circuit };

std::string_view to_string(SpectrumMethod method);

/// Relative probabilities P_c for c in [0, q) after the Fourier transform.
///
/// Values are left exactly as the formulas produce them unless `normalized`
/// is set; phase-only error models are unitary and sum to 1 anyway, while
/// amplitude and initialization errors are first-order and do not.
struct Spectrum {
    ShorInstance instance;
    SpectrumMethod method = SpectrumMethod::Noiseless;
    std::vector<double> values;
    bool normalized = false;
    std::optional<uint64_t> realization_seed;
    std::optional<ErrorModel> model;
    /// Entries of a closed-form spectrum that fell back to direct summation.
    uint64_t singular_fallbacks = 0;

    uint64_t dim() const {
        return values.size();
    }
    double total() const;
    /// Divides by the total. A zero spectrum is left unchanged.
    void normalize();
};

/// |sin| below which the closed form is replaced by direct summation.
inline constexpr double kSingularSineTolerance = 1e-9;

/// Error-free distribution, by direct summation over the support.
Spectrum noiseless_spectrum(const ShorInstance &inst);

/// P_c = (r/q^2) |sum_j w_{a_j} (1 + amp_j) exp(i (2 pi c / q + phase_j) a_j)|^2, a_j = j r + l.
///
/// `phase_errors` and `amp_errors` have one entry per support element.
/// `init_weights`, when nonempty, is indexed by the basis value a in [0, q).
/// Throws std::invalid_argument on length mismatches.
Spectrum direct_spectrum(
    const ShorInstance &inst,
    std::span<const double> phase_errors,
    std::span<const double> amp_errors,
    std::span<const double> init_weights = {});

/// Closed form for a constant phase error delta:
///   P_c = (r/q^2) sin^2(M r theta / 2) / sin^2(r theta / 2),  theta = 2 pi c / q + delta,
/// which for r | q is (r/q^2) sin^2(delta q / 2) / sin^2(pi c r / q + delta r / 2).
/// Entries whose denominator sine falls below kSingularSineTolerance are
/// computed by direct summation and counted in `singular_fallbacks`.
Spectrum systematic_spectrum_closed_form(const ShorInstance &inst, double delta);

/// Initialization weights w_a = 1 + delta (2 popcount(a) - n) for a in [0, 2^n).
std::vector<double> init_error_weights(unsigned n_qubits, double delta);

/// Largest register for which init_error_weights materializes a weight table.
inline constexpr unsigned kMaxWeightQubits = 24;

/// Samples the model's errors for one realization and evaluates direct_spectrum.
Spectrum combined_spectrum(const ShorInstance &inst, const ErrorModel &model, uint64_t seed);

/// Half the L1 distance between the two spectra after normalizing each.
double total_variation(std::span<const double> a, std::span<const double> b);

}  // namespace shorsim

#endif
