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

#include "shorsim/qcircuit.h"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "parallel.h"

namespace shorsim {

namespace {

// Gate kernels split the index range into chunks; chunks never share an amplitude.
constexpr uint64_t kChunk = uint64_t{1} << 14;

template <typename Fn>
void for_chunks(uint64_t n, Fn &&fn) {
    uint64_t chunks = (n + kChunk - 1) / kChunk;
    detail::parallel_for(
        chunks,
        [&](size_t k) {
            fn(k * kChunk, std::min<uint64_t>(n, (k + 1) * kChunk));
        },
        8);
}

uint64_t reverse_bits(uint64_t x, unsigned width) {
    uint64_t out = 0;
    for (unsigned b = 0; b < width; ++b) {
        out = (out << 1) | ((x >> b) & 1);
    }
    return out;
}

void check_qubit(const StateVector &state, unsigned qubit) {
    if (qubit >= state.num_qubits()) {
        throw std::invalid_argument(
            "qubit " + std::to_string(qubit) + " out of range for " + std::to_string(state.num_qubits()) + " qubits");
    }
}

}  // namespace

StateVector::StateVector(unsigned num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits == 0 || num_qubits > kMaxCircuitQubits) {
        throw std::invalid_argument("state vectors support 1 to 24 qubits");
    }
    amplitudes_.assign(uint64_t{1} << num_qubits, Amplitude{});
    amplitudes_[0] = 1.0;
}

StateVector::StateVector(unsigned num_qubits, std::vector<Amplitude> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amplitudes) {
    uint64_t n = amplitudes.size();
    if (n < 2 || !std::has_single_bit(n) || std::countr_zero(n) > static_cast<int>(kMaxCircuitQubits)) {
        throw std::invalid_argument("amplitude count must be 2^L with 1 <= L <= 24");
    }
    return StateVector(static_cast<unsigned>(std::countr_zero(n)), std::move(amplitudes));
}

double StateVector::norm_squared() const {
    double total = 0.0;
    for (const auto &a : amplitudes_) {
        total += std::norm(a);
    }
    return total;
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(amplitudes_.size());
    for (uint64_t i = 0; i < p.size(); ++i) {
        p[i] = std::norm(amplitudes_[i]);
    }
    return p;
}

void apply_hadamard_noisy(StateVector &state, unsigned qubit, double delta) {
    check_qubit(state, qubit);
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    const double cm = (std::cos(delta) - std::sin(delta)) * inv_sqrt2;
    const double cp = (std::cos(delta) + std::sin(delta)) * inv_sqrt2;
    // Rotation [[cm, -cp], [cp, cm]] times diag(1, -1).
    const double m00 = cm, m01 = cp, m10 = cp, m11 = -cm;
    const uint64_t bit = uint64_t{1} << qubit;
    auto amps = state.amplitudes();
    // Iterate over indices with the target bit clear; each pair (i, i | bit) is owned by one chunk.
    const uint64_t half = state.dim() >> 1;
    for_chunks(half, [&](uint64_t begin, uint64_t end) {
        for (uint64_t k = begin; k < end; ++k) {
            uint64_t i0 = ((k & ~(bit - 1)) << 1) | (k & (bit - 1));
            uint64_t i1 = i0 | bit;
            Amplitude a0 = amps[i0];
            Amplitude a1 = amps[i1];
            amps[i0] = m00 * a0 + m01 * a1;
            amps[i1] = m10 * a0 + m11 * a1;
        }
    });
}

void apply_controlled_phase_noisy(StateVector &state, unsigned control, unsigned target, double theta, double delta) {
    check_qubit(state, control);
    check_qubit(state, target);
    if (control == target) {
        throw std::invalid_argument("controlled phase needs distinct control and target");
    }
    const Amplitude phase = std::polar(1.0, theta + delta);
    const uint64_t both = (uint64_t{1} << control) | (uint64_t{1} << target);
    auto amps = state.amplitudes();
    for_chunks(state.dim(), [&](uint64_t begin, uint64_t end) {
        for (uint64_t i = begin; i < end; ++i) {
            if ((i & both) == both) {
                amps[i] *= phase;
            }
        }
    });
}

GateErrorPlan GateErrorPlan::zero(unsigned num_qubits) {
    GateErrorPlan plan;
    plan.hadamard_deltas.assign(num_qubits, 0.0);
    plan.phase_deltas.assign(static_cast<size_t>(num_qubits) * (num_qubits - 1) / 2, 0.0);
    return plan;
}

GateErrorPlan GateErrorPlan::sample(const ErrorModel &model, unsigned num_qubits, uint64_t seed) {
    GateErrorPlan plan = zero(num_qubits);
    plan.seed = seed;
    auto draws = sample_phase_errors(model, plan.hadamard_deltas.size() + plan.phase_deltas.size(), seed);
    size_t next = 0, pair = 0;
    for (unsigned j = 0; j < num_qubits; ++j) {
        plan.hadamard_deltas[j] = draws[next++];
        for (unsigned k = j + 1; k < num_qubits; ++k) {
            plan.phase_deltas[pair++] = draws[next++];
        }
    }
    return plan;
}

void GateErrorPlan::validate(unsigned num_qubits) const {
    size_t pairs = static_cast<size_t>(num_qubits) * (num_qubits - 1) / 2;
    if (hadamard_deltas.size() != num_qubits || phase_deltas.size() != pairs) {
        throw std::invalid_argument(
            "gate error plan needs " + std::to_string(num_qubits) + " Hadamard and " + std::to_string(pairs) +
            " controlled-phase entries");
    }
}

GateCounts qft_noisy(StateVector &state, const GateErrorPlan &plan) {
    const unsigned n = state.num_qubits();
    plan.validate(n);
    GateCounts counts;
    size_t pair = 0;
    for (unsigned j = 0; j < n; ++j) {
        const unsigned target = n - 1 - j;
        apply_hadamard_noisy(state, target, plan.hadamard_deltas[j]);
        ++counts.hadamards;
        for (unsigned k = j + 1; k < n; ++k) {
            const double theta = std::numbers::pi / std::ldexp(1.0, static_cast<int>(k - j));
            apply_controlled_phase_noisy(state, n - 1 - k, target, theta, plan.phase_deltas[pair++]);
            ++counts.controlled_phases;
        }
    }
    auto amps = state.amplitudes();
    for (uint64_t i = 0; i < state.dim(); ++i) {
        uint64_t rev = reverse_bits(i, n);
        if (i < rev) {
            std::swap(amps[i], amps[rev]);
        }
    }
    return counts;
}

StateVector prepare_period_state(const ShorInstance &inst, double init_delta) {
    if (inst.num_qubits > kMaxCircuitQubits) {
        throw std::invalid_argument("circuit simulation is limited to 24 qubits");
    }
    if (inst.order == 0 || inst.offset >= inst.order || inst.dim != (uint64_t{1} << inst.num_qubits) ||
        inst.support != (inst.dim - 1 - inst.offset) / inst.order + 1) {
        throw std::invalid_argument("inconsistent (q, r, l) in instance");
    }
    std::vector<Amplitude> amps(inst.dim, Amplitude{});
    const double width = static_cast<double>(inst.num_qubits);
    double total = 0.0;
    for (uint64_t j = 0; j < inst.support; ++j) {
        uint64_t a = inst.support_value(j);
        double w = 1.0 + init_delta * (2.0 * popcount(a) - width);
        amps[a] = w;
        total += w * w;
    }
    if (total <= 0.0) {
        throw std::invalid_argument("initialization weights vanish on the support");
    }
    const double scale = 1.0 / std::sqrt(total);
    for (auto &a : amps) {
        a *= scale;
    }
    return StateVector::from_amplitudes(std::move(amps));
}

uint64_t sample_outcome(const StateVector &state, double u) {
    double cumulative = 0.0;
    auto amps = state.amplitudes();
    for (uint64_t c = 0; c < amps.size(); ++c) {
        cumulative += std::norm(amps[c]);
        if (u < cumulative) {
            return c;
        }
    }
    // Rounding left the total just below u: return the last outcome with mass.
    for (uint64_t c = amps.size(); c-- > 0;) {
        if (std::norm(amps[c]) > 0.0) {
            return c;
        }
    }
    return amps.size() - 1;
}

Measurement measure_all(const StateVector &state, RngState rng) {
    double norm = state.norm_squared();
    if (std::abs(norm - 1.0) > 1e-6) {
        throw std::runtime_error("measure_all: state is not normalized (norm^2 = " + std::to_string(norm) + ")");
    }
    auto draw = rng_uniform_01(rng);
    return {draw.state, sample_outcome(state, draw.value)};
}

Spectrum circuit_spectrum(const ShorInstance &inst, const ErrorModel &model, uint64_t seed) {
    model.validate();
    StateVector state = prepare_period_state(inst, model.init_delta);
    qft_noisy(state, GateErrorPlan::sample(model, inst.num_qubits, seed));
    Spectrum out;
    out.instance = inst;
    out.method = SpectrumMethod::Circuit;
    out.values = state.probabilities();
    out.normalized = true;
    out.model = model;
    if (!model.is_deterministic()) {
        out.realization_seed = seed;
    }
    return out;
}

}  // namespace shorsim
