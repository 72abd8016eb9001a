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

#include "shorsim/spectrum.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "parallel.h"

namespace shorsim {

namespace {

constexpr uint64_t kBlock = 256;

/// One entry of the direct sum. Empty spans stand for all-zero errors and unit weights.
///
/// (c * a) mod q is taken on integers before scaling by 2 pi / q; since q is a
/// power of two the wrapping 64-bit product already holds the right residue.
double direct_entry(
    const ShorInstance &inst,
    uint64_t c,
    std::span<const double> phase,
    std::span<const double> amp,
    std::span<const double> weights) {
    const uint64_t mask = inst.dim - 1;
    const double step = 2.0 * std::numbers::pi / static_cast<double>(inst.dim);
    double re = 0.0, im = 0.0;
    for (uint64_t j = 0; j < inst.support; ++j) {
        uint64_t a = inst.support_value(j);
        double angle = step * static_cast<double>((c * a) & mask);
        if (!phase.empty()) {
            angle += phase[j] * static_cast<double>(a);
        }
        double g = 1.0;
        if (!amp.empty()) {
            g += amp[j];
        }
        if (!weights.empty()) {
            g *= weights[a];
        }
        re += g * std::cos(angle);
        im += g * std::sin(angle);
    }
    double q = static_cast<double>(inst.dim);
    return static_cast<double>(inst.order) / (q * q) * (re * re + im * im);
}

template <typename Fn>
void fill_blocks(std::vector<double> &values, Fn &&entry) {
    uint64_t n = values.size();
    uint64_t blocks = (n + kBlock - 1) / kBlock;
    detail::parallel_for(
        blocks,
        [&](size_t b) {
            uint64_t end = std::min<uint64_t>(n, (b + 1) * kBlock);
            for (uint64_t c = b * kBlock; c < end; ++c) {
                values[c] = entry(c);
            }
        },
        4);
}

Spectrum direct_impl(
    const ShorInstance &inst,
    std::span<const double> phase,
    std::span<const double> amp,
    std::span<const double> weights,
    SpectrumMethod method) {
    Spectrum out;
    out.instance = inst;
    out.method = method;
    out.values.assign(inst.dim, 0.0);
    fill_blocks(out.values, [&](uint64_t c) {
        return direct_entry(inst, c, phase, amp, weights);
    });
    return out;
}

}  // namespace

std::string_view to_string(SpectrumMethod method) {
    switch (method) {
        case SpectrumMethod::Noiseless:
            return "noiseless";
        case SpectrumMethod::DirectSum:
            return "direct";
        case SpectrumMethod::ClosedForm:
            return "closed";
        case SpectrumMethod::Circuit:
            return "circuit";
    }
    return "?";
}

double Spectrum::total() const {
    double t = 0.0;
    for (double v : values) {
        t += v;
    }
    return t;
}

void Spectrum::normalize() {
    double t = total();
    if (t <= 0.0) {
        return;
    }
    for (auto &v : values) {
        v /= t;
    }
    normalized = true;
}

Spectrum noiseless_spectrum(const ShorInstance &inst) {
    Spectrum out = direct_impl(inst, {}, {}, {}, SpectrumMethod::Noiseless);
    out.model = ErrorModel::none();
    return out;
}

Spectrum direct_spectrum(
    const ShorInstance &inst,
    std::span<const double> phase_errors,
    std::span<const double> amp_errors,
    std::span<const double> init_weights) {
    if (phase_errors.size() != inst.support || amp_errors.size() != inst.support) {
        throw std::invalid_argument(
            "direct_spectrum: error vectors must have one entry per support element (M=" +
            std::to_string(inst.support) + "), got " + std::to_string(phase_errors.size()) + " and " +
            std::to_string(amp_errors.size()));
    }
    if (!init_weights.empty() && init_weights.size() != inst.dim) {
        throw std::invalid_argument("direct_spectrum: init weights must have q entries");
    }
    return direct_impl(inst, phase_errors, amp_errors, init_weights, SpectrumMethod::DirectSum);
}

Spectrum systematic_spectrum_closed_form(const ShorInstance &inst, double delta) {
    if (!std::isfinite(delta)) {
        throw std::invalid_argument("closed form requires a finite delta");
    }
    Spectrum out;
    out.instance = inst;
    out.method = SpectrumMethod::ClosedForm;
    out.model = ErrorModel::systematic(delta);
    out.values.assign(inst.dim, 0.0);

    const uint64_t mask = inst.dim - 1;
    const double q = static_cast<double>(inst.dim);
    const double r = static_cast<double>(inst.order);
    const double span = static_cast<double>(inst.support) * r;
    const double scale = r / (q * q);
    const std::vector<double> constant(inst.support, delta);

    std::vector<uint8_t> fell_back(inst.dim, 0);
    fill_blocks(out.values, [&](uint64_t c) {
        double den = std::sin(std::numbers::pi * static_cast<double>((c * inst.order) & mask) / q + delta * r / 2.0);
        if (std::abs(den) < kSingularSineTolerance) {
            fell_back[c] = 1;
            return direct_entry(inst, c, constant, {}, {});
        }
        uint64_t wrapped = (c * inst.support * inst.order) & mask;
        double num = std::sin(std::numbers::pi * static_cast<double>(wrapped) / q + delta * span / 2.0);
        return scale * (num * num) / (den * den);
    });
    for (uint8_t f : fell_back) {
        out.singular_fallbacks += f;
    }
    return out;
}

std::vector<double> init_error_weights(unsigned n_qubits, double delta) {
    if (n_qubits == 0 || n_qubits > kMaxWeightQubits) {
        throw std::invalid_argument("init_error_weights: n_qubits must lie in [1, 24]");
    }
    uint64_t n = uint64_t{1} << n_qubits;
    std::vector<double> w(n);
    double width = static_cast<double>(n_qubits);
    for (uint64_t a = 0; a < n; ++a) {
        w[a] = 1.0 + delta * (2.0 * popcount(a) - width);
    }
    return w;
}

Spectrum combined_spectrum(const ShorInstance &inst, const ErrorModel &model, uint64_t seed) {
    model.validate();
    auto phase = sample_phase_errors(model, inst.support, seed);
    auto amp = sample_amplitude_errors(model, inst.support, seed);
    std::vector<double> weights;
    if (model.init_delta != 0.0) {
        weights = init_error_weights(inst.num_qubits, model.init_delta);
    }
    Spectrum out = direct_spectrum(inst, phase, amp, weights);
    out.model = model;
    if (!model.is_deterministic()) {
        out.realization_seed = seed;
    }
    return out;
}

double total_variation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("total_variation: length mismatch");
    }
    double ta = 0.0, tb = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        ta += a[i];
        tb += b[i];
    }
    if (ta <= 0.0 || tb <= 0.0) {
        throw std::invalid_argument("total_variation: spectra must have positive mass");
    }
    double d = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        d += std::abs(a[i] / ta - b[i] / tb);
    }
    return 0.5 * d;
}

}  // namespace shorsim
