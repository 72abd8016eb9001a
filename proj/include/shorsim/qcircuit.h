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

#ifndef SHORSIM_QCIRCUIT_H
#define SHORSIM_QCIRCUIT_H

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "shorsim/errmodel.h"
#include "shorsim/numth.h"
#include "shorsim/spectrum.h"

namespace shorsim {

using Amplitude = std::complex<double>;

inline constexpr unsigned kMaxCircuitQubits = 24;

/// Dense pure state over L qubits. Qubit b is bit b of the basis index.
class StateVector {
   public:
    /// |0...0>.
    explicit StateVector(unsigned num_qubits);

    /// Takes ownership of `amplitudes`; the size must be a power of two.
    static StateVector from_amplitudes(std::vector<Amplitude> amplitudes);

    unsigned num_qubits() const {
        return num_qubits_;
    }
    uint64_t dim() const {
        return amplitudes_.size();
    }
    std::span<const Amplitude> amplitudes() const {
        return amplitudes_;
    }
    std::span<Amplitude> amplitudes() {
        return amplitudes_;
    }
    Amplitude operator[](uint64_t index) const {
        return amplitudes_[index];
    }
    double norm_squared() const;
    std::vector<double> probabilities() const;

   private:
    StateVector(unsigned num_qubits, std::vector<Amplitude> amplitudes);

    unsigned num_qubits_;
    std::vector<Amplitude> amplitudes_;
};

/// Miscalibrated Walsh-Hadamard on `qubit`.
///
/// The pulse is a y-rotation by pi/2 + 2 delta,
///   (1/sqrt2) [[cos d - sin d, -(sin d + cos d)], [sin d + cos d, cos d - sin d]],
/// applied after a Z so that delta = 0 reproduces H exactly. On |0> the Z is
/// invisible and the gate acts as the bare rotation.
void apply_hadamard_noisy(StateVector &state, unsigned qubit, double delta);

/// Multiplies every amplitude with both bits set by exp(i (theta + delta)).
void apply_controlled_phase_noisy(StateVector &state, unsigned control, unsigned target, double theta, double delta);

/// Per-gate errors for one Fourier transform on L qubits.
///
/// Stage j (0-based, in application order) acts on qubit L-1-j: one noisy
/// Hadamard followed by controlled phases with stages k = j+1..L-1, angle
/// pi / 2^(k-j). `phase_deltas` is ordered by (j, k) lexicographically.
struct GateErrorPlan {
    std::vector<double> hadamard_deltas;
    std::vector<double> phase_deltas;
    uint64_t seed = 0;

    static GateErrorPlan zero(unsigned num_qubits);
    /// One draw per gate in application order, with the phase-error stream of `seed`.
    static GateErrorPlan sample(const ErrorModel &model, unsigned num_qubits, uint64_t seed);

    /// Throws std::invalid_argument if the sizes do not match an L-qubit transform.
    void validate(unsigned num_qubits) const;
};

struct GateCounts {
    size_t hadamards = 0;
    size_t controlled_phases = 0;
};

/// Applies the noisy transform followed by a bit reversal, so the zero-error
/// plan maps |a> to q^{-1/2} sum_c exp(2 pi i a c / q) |c>.
GateCounts qft_noisy(StateVector &state, const GateErrorPlan &plan);

/// First register after the second register has been measured: amplitudes
/// proportional to w_a on a = j r + l, zero elsewhere, unit norm.
StateVector prepare_period_state(const ShorInstance &inst, double init_delta);

struct Measurement {
    RngState state;
    uint64_t outcome;
};

/// Inverse-CDF pick: the first c whose cumulative probability exceeds u.
uint64_t sample_outcome(const StateVector &state, double u);

/// Draws one uniform from `rng` and measures all qubits.
/// Throws std::runtime_error if the state norm is off by more than 1e-6.
Measurement measure_all(const StateVector &state, RngState rng);

/// Prepares the period state, applies the noisy transform under a sampled
/// gate plan, and returns |amplitude_c|^2.
Spectrum circuit_spectrum(const ShorInstance &inst, const ErrorModel &model, uint64_t seed);

}  // namespace shorsim

#endif
