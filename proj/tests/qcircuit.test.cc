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

#include <cmath>
#include <complex>
#include <numbers>

#include "gtest/gtest.h"
#include "shorsim/spectrum.h"

using namespace shorsim;

namespace {

constexpr double kPi = std::numbers::pi;
const Amplitude kI{0.0, 1.0};

// Dense O(q^2) DFT, the oracle for the gate-level transform.
std::vector<Amplitude> dense_dft(const std::vector<Amplitude> &in) {
    const size_t q = in.size();
    std::vector<Amplitude> out(q);
    for (size_t c = 0; c < q; ++c) {
        Amplitude acc = 0;
        for (size_t a = 0; a < q; ++a) {
            acc += in[a] * std::exp(2.0 * kPi * kI * static_cast<double>((c * a) % q) / static_cast<double>(q));
        }
        out[c] = acc / std::sqrt(static_cast<double>(q));
    }
    return out;
}

double max_amp_diff(std::span<const Amplitude> a, std::span<const Amplitude> b) {
    double d = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
    }
    return d;
}

std::vector<Amplitude> random_state(unsigned n, uint64_t seed) {
    Rng rng(seed);
    std::vector<Amplitude> amps(uint64_t{1} << n);
    double norm = 0.0;
    for (auto &a : amps) {
        a = {rng.gaussian(), rng.gaussian()};
        norm += std::norm(a);
    }
    for (auto &a : amps) {
        a /= std::sqrt(norm);
    }
    return amps;
}

}  // namespace

TEST(qcircuit, state_starts_in_zero) {
    StateVector s(3);
    EXPECT_EQ(s.dim(), 8u);
    EXPECT_EQ(s[0], Amplitude(1.0));
    EXPECT_DOUBLE_EQ(s.norm_squared(), 1.0);
    EXPECT_THROW(StateVector(kMaxCircuitQubits + 1), std::invalid_argument);
    EXPECT_THROW(StateVector::from_amplitudes(std::vector<Amplitude>(3)), std::invalid_argument);
}

TEST(qcircuit, hadamard_examples) {
    const double h = 1.0 / std::sqrt(2.0);
    StateVector s(1);
    apply_hadamard_noisy(s, 0, 0.0);
    EXPECT_NEAR(std::abs(s[0] - h), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s[1] - h), 0.0, 1e-15);

    StateVector one = StateVector::from_amplitudes({0.0, 1.0});
    apply_hadamard_noisy(one, 0, 0.0);
    EXPECT_NEAR(std::abs(one[0] - h), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(one[1] + h), 0.0, 1e-15);

    // delta = pi/4 is a full pi rotation: |0> -> |1>.
    StateVector flip(1);
    apply_hadamard_noisy(flip, 0, kPi / 4);
    EXPECT_NEAR(std::abs(flip[0]), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(flip[1] - 1.0), 0.0, 1e-15);

    // On |0> the gate is the bare rotation.
    const double d = 0.013;
    StateVector small(1);
    apply_hadamard_noisy(small, 0, d);
    EXPECT_NEAR(small[0].real(), h * (std::cos(d) - std::sin(d)), 1e-15);
    EXPECT_NEAR(small[1].real(), h * (std::sin(d) + std::cos(d)), 1e-15);
}

TEST(qcircuit, hadamard_acts_on_the_named_qubit) {
    StateVector s(3);
    apply_hadamard_noisy(s, 1, 0.0);
    auto p = s.probabilities();
    EXPECT_NEAR(p[0], 0.5, 1e-15);
    EXPECT_NEAR(p[2], 0.5, 1e-15);
    EXPECT_THROW(apply_hadamard_noisy(s, 3, 0.0), std::invalid_argument);
}

TEST(qcircuit, noisy_gates_are_unitary) {
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        auto s = StateVector::from_amplitudes(random_state(5, 1000 + trial));
        double d = 2.0 * rng.uniform01() - 1.0;
        apply_hadamard_noisy(s, trial % 5, d);
        apply_controlled_phase_noisy(s, trial % 5, (trial + 2) % 5, 0.7, d);
        EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
    }
}

TEST(qcircuit, controlled_phase_examples) {
    const double h = 0.5;
    StateVector s = StateVector::from_amplitudes({h, h, h, h});
    apply_controlled_phase_noisy(s, 0, 1, kPi / 2, 0.1);
    EXPECT_EQ(s[0], Amplitude(h));
    EXPECT_EQ(s[1], Amplitude(h));
    EXPECT_EQ(s[2], Amplitude(h));
    EXPECT_NEAR(std::abs(s[3] - h * std::exp(kI * 1.6707963267948966)), 0.0, 1e-15);
    EXPECT_THROW(apply_controlled_phase_noisy(s, 1, 1, 1.0, 0.0), std::invalid_argument);
    EXPECT_THROW(apply_controlled_phase_noisy(s, 0, 2, 1.0, 0.0), std::invalid_argument);
}

TEST(qcircuit, qft_small_examples) {
    // Uniform superposition maps to |0>.
    std::vector<Amplitude> uniform(8, 1.0 / std::sqrt(8.0));
    auto s = StateVector::from_amplitudes(uniform);
    qft_noisy(s, GateErrorPlan::zero(3));
    EXPECT_NEAR(std::abs(s[0] - 1.0), 0.0, 1e-14);

    // A pure frequency 5 maps to |5>.
    std::vector<Amplitude> wave(8);
    for (int a = 0; a < 8; ++a) {
        wave[a] = std::exp(-2.0 * kPi * kI * 5.0 * double(a) / 8.0) / std::sqrt(8.0);
    }
    auto w = StateVector::from_amplitudes(wave);
    qft_noisy(w, GateErrorPlan::zero(3));
    EXPECT_NEAR(std::abs(w[5] - 1.0), 0.0, 1e-14);
}

TEST(qcircuit, qft_matches_dense_dft_on_basis_states) {
    for (unsigned n = 1; n <= 7; ++n) {
        const uint64_t q = uint64_t{1} << n;
        for (uint64_t a = 0; a < q; ++a) {
            std::vector<Amplitude> basis(q, 0.0);
            basis[a] = 1.0;
            auto s = StateVector::from_amplitudes(basis);
            qft_noisy(s, GateErrorPlan::zero(n));
            EXPECT_LT(max_amp_diff(s.amplitudes(), dense_dft(basis)), 1e-12) << "n=" << n << " a=" << a;
        }
    }
}

TEST(qcircuit, qft_matches_dense_dft_on_random_states) {
    for (unsigned n = 8; n <= 12; ++n) {
        auto amps = random_state(n, n);
        auto s = StateVector::from_amplitudes(amps);
        qft_noisy(s, GateErrorPlan::zero(n));
        EXPECT_LT(max_amp_diff(s.amplitudes(), dense_dft(amps)), 1e-12) << n;
    }
}

TEST(qcircuit, gate_counts) {
    for (unsigned n = 1; n <= 10; ++n) {
        StateVector s(n);
        auto counts = qft_noisy(s, GateErrorPlan::zero(n));
        EXPECT_EQ(counts.hadamards, n);
        EXPECT_EQ(counts.controlled_phases, n * (n - 1) / 2);
    }
}

TEST(qcircuit, gate_plans) {
    auto zero = GateErrorPlan::zero(5);
    EXPECT_EQ(zero.hadamard_deltas.size(), 5u);
    EXPECT_EQ(zero.phase_deltas.size(), 10u);
    auto sys = GateErrorPlan::sample(ErrorModel::systematic(0.2), 4, 1);
    for (double d : sys.hadamard_deltas) EXPECT_EQ(d, 0.2);
    for (double d : sys.phase_deltas) EXPECT_EQ(d, 0.2);
    auto a = GateErrorPlan::sample(ErrorModel::uniform(0.1), 6, 7);
    auto b = GateErrorPlan::sample(ErrorModel::uniform(0.1), 6, 7);
    EXPECT_EQ(a.hadamard_deltas, b.hadamard_deltas);
    EXPECT_EQ(a.phase_deltas, b.phase_deltas);
    GateErrorPlan bad = GateErrorPlan::zero(4);
    bad.phase_deltas.pop_back();
    EXPECT_THROW(bad.validate(4), std::invalid_argument);
    StateVector s(4);
    EXPECT_THROW(qft_noisy(s, bad), std::invalid_argument);
}

TEST(qcircuit, prepare_period_state_examples) {
    auto s = prepare_period_state(ShorInstance::synthetic(3, 2, 1), 0.0);
    for (uint64_t a = 0; a < 8; ++a) {
        EXPECT_NEAR(std::abs(s[a]), a % 2 == 1 ? 0.5 : 0.0, 1e-15) << a;
    }
    auto w = prepare_period_state(ShorInstance::synthetic(2, 1, 0), 0.1);
    // Weights 1 + 0.1 (ones - zeros), a = 0..3 -> 0.8, 1, 1, 1.2 before normalization.
    const double norm = std::sqrt(0.64 + 2 + 1.44);
    EXPECT_NEAR(w[0].real(), 0.8 / norm, 1e-15);
    EXPECT_NEAR(w[1].real(), 1.0 / norm, 1e-15);
    EXPECT_NEAR(w[3].real(), 1.2 / norm, 1e-15);
    EXPECT_NEAR(w.norm_squared(), 1.0, 1e-15);
}

TEST(qcircuit, sampling_and_measurement) {
    auto s = StateVector::from_amplitudes({std::sqrt(0.25), std::sqrt(0.5), std::sqrt(0.25), 0.0});
    EXPECT_EQ(sample_outcome(s, 0.0), 0u);
    EXPECT_EQ(sample_outcome(s, 0.3), 1u);
    EXPECT_EQ(sample_outcome(s, 0.8), 2u);

    std::vector<Amplitude> five(8, 0.0);
    five[5] = 1.0;
    auto m = measure_all(StateVector::from_amplitudes(five), RngState::from_seed(3));
    EXPECT_EQ(m.outcome, 5u);
    EXPECT_NE(m.state, RngState::from_seed(3));

    auto bad = StateVector::from_amplitudes({1.0, 1.0});
    EXPECT_THROW(measure_all(bad, RngState::from_seed(1)), std::runtime_error);
}

TEST(qcircuit, measurement_frequencies_follow_probabilities) {
    auto s = StateVector::from_amplitudes(random_state(3, 11));
    auto p = s.probabilities();
    std::vector<double> counts(8, 0.0);
    RngState rng = RngState::from_seed(2024);
    const int shots = 100000;
    for (int i = 0; i < shots; ++i) {
        auto m = measure_all(s, rng);
        rng = m.state;
        counts[m.outcome] += 1;
    }
    for (int c = 0; c < 8; ++c) {
        double sd = std::sqrt(p[c] * (1 - p[c]) / shots);
        EXPECT_NEAR(counts[c] / shots, p[c], 5 * sd + 1e-12) << c;
    }
}

TEST(qcircuit, circuit_spectrum_zero_error_equals_noiseless) {
    for (uint64_t r : {4u, 5u, 6u}) {
        auto inst = ShorInstance::synthetic(7, r, 1);
        auto circ = circuit_spectrum(inst, ErrorModel::none(), 1);
        auto ref = noiseless_spectrum(inst);
        ref.normalize();
        EXPECT_TRUE(circ.normalized);
        EXPECT_LT(total_variation(circ.values, ref.values), 1e-12) << r;
    }
}

TEST(qcircuit, circuit_spectrum_is_a_distribution) {
    auto inst = ShorInstance::synthetic(8, 5, 2);
    auto spec = circuit_spectrum(inst, ErrorModel::gaussian(0.3, 0.1), 77);
    EXPECT_NEAR(spec.total(), 1.0, 1e-12);
    for (double v : spec.values) EXPECT_GE(v, 0.0);
}

TEST(qcircuit, circuit_agrees_with_direct_sum_to_first_order) {
    // Halving a systematic error shrinks the gap to the aggregated-phase
    // spectrum by roughly 4, so the two agree through first order in TV.
    auto inst = ShorInstance::synthetic(7, 4, 0);
    auto gap = [&](double delta) {
        auto circ = circuit_spectrum(inst, ErrorModel::systematic(delta), 0);
        auto direct = systematic_spectrum_closed_form(inst, delta);
        return total_variation(circ.values, direct.values);
    };
    double ratio = gap(0.01) / gap(0.005);
    EXPECT_GE(ratio, 3.0);
    EXPECT_LE(ratio, 5.0);
}

TEST(qcircuit, systematic_gate_errors_damp_but_do_not_move_peaks) {
    // Per-gate phase errors enter as delta * c_j * a_k, bilinear in the bits of
    // c and a, so on a periodic input they lower the peaks without moving them.
    // The aggregated-phase model instead shifts peaks by -delta q / 2 pi.
    auto inst = ShorInstance::synthetic(7, 4, 0);
    double previous = 1.0;
    for (double delta : {0.05, 0.1, 0.2}) {
        auto circ = circuit_spectrum(inst, ErrorModel::systematic(delta), 0);
        double peak_mass = 0.0;
        for (uint64_t k = 0; k < 4; ++k) {
            for (uint64_t c = k * 32 + 1; c < k * 32 + 32; ++c) {
                EXPECT_GT(circ.values[k * 32], circ.values[c]) << delta;
            }
            peak_mass += circ.values[k * 32];
        }
        EXPECT_LT(peak_mass, previous);
        previous = peak_mass;
        auto closed = systematic_spectrum_closed_form(inst, delta);
        auto shifted = 128 - std::llround(delta * 128 / (2 * kPi));
        EXPECT_GT(closed.values[shifted], closed.values[0]) << delta;
    }
}
