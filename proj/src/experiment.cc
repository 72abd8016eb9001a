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

#include "shorsim/experiment.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parallel.h"

namespace shorsim {

namespace {

constexpr size_t kRealizationBatch = 64;

/// Evaluates fn(i) for i in [0, n) concurrently in bounded batches and hands
/// each result to fold(i, result) strictly in index order.
template <typename Produce, typename Fold>
void ordered_map_reduce(size_t n, Produce &&produce, Fold &&fold) {
    using Result = decltype(produce(size_t{0}));
    for (size_t start = 0; start < n; start += kRealizationBatch) {
        size_t count = std::min(kRealizationBatch, n - start);
        std::vector<Result> batch(count);
        detail::parallel_for(
            count,
            [&](size_t i) {
                batch[i] = produce(start + i);
            },
            2);
        for (size_t i = 0; i < count; ++i) {
            fold(start + i, batch[i]);
        }
    }
}

int64_t wrap_shift(int64_t d, int64_t q) {
    d %= q;
    if (d < 0) {
        d += q;
    }
    if (d > q / 2) {
        d -= q;
    }
    return d;
}

}  // namespace

EnsembleResult ensemble_spectrum(
    const ShorInstance &inst, const ErrorModel &model, size_t n_realizations, uint64_t master_seed) {
    if (n_realizations == 0) {
        throw std::invalid_argument("ensemble_spectrum: n_realizations must be >= 1");
    }
    model.validate();
    EnsembleResult out;
    out.requested_realizations = n_realizations;
    out.master_seed = master_seed;
    out.realizations = model.is_deterministic() ? 1 : n_realizations;

    std::vector<double> mean(inst.dim, 0.0);
    std::vector<double> m2(inst.dim, 0.0);
    ordered_map_reduce(
        out.realizations,
        [&](size_t i) {
            return combined_spectrum(inst, model, derive_seed(master_seed, i)).values;
        },
        [&](size_t i, const std::vector<double> &values) {
            // Welford update.
            double k = static_cast<double>(i + 1);
            for (uint64_t c = 0; c < inst.dim; ++c) {
                double d = values[c] - mean[c];
                mean[c] += d / k;
                m2[c] += d * (values[c] - mean[c]);
            }
        });

    out.stddev.resize(inst.dim);
    for (uint64_t c = 0; c < inst.dim; ++c) {
        out.stddev[c] = std::sqrt(std::max(0.0, m2[c]) / static_cast<double>(out.realizations));
    }
    out.mean.instance = inst;
    out.mean.method = SpectrumMethod::DirectSum;
    out.mean.values = std::move(mean);
    out.mean.model = model;
    return out;
}

PeakReport peak_report(const Spectrum &spectrum, double height_floor_fraction) {
    if (!(height_floor_fraction > 0.0 && height_floor_fraction <= 1.0)) {
        throw std::invalid_argument("height_floor_fraction must lie in (0, 1]");
    }
    const auto &values = spectrum.values;
    const uint64_t q = values.size();
    const uint64_t r = spectrum.instance.order;
    PeakReport report;
    for (uint64_t k = 0; k < r; ++k) {
        report.reference_positions.push_back(static_cast<double>(k) * static_cast<double>(q) / static_cast<double>(r));
    }
    if (q == 0) {
        return report;
    }
    double top = *std::max_element(values.begin(), values.end());
    if (!(top > 0.0)) {
        return report;
    }
    const double floor = height_floor_fraction * top;
    for (uint64_t c = 0; c < q; ++c) {
        double v = values[c];
        double left = values[(c + q - 1) % q];
        double right = values[(c + 1) % q];
        if (v >= floor && v > left && v >= right) {
            report.peaks.push_back({c, v});
        }
    }
    const auto qi = static_cast<int64_t>(q);
    for (const auto &peak : report.peaks) {
        int64_t best = 0;
        double best_distance = INFINITY;
        for (double ref : report.reference_positions) {
            int64_t shift = wrap_shift(static_cast<int64_t>(peak.position) - std::llround(ref), qi);
            double distance = std::abs(std::remainder(static_cast<double>(peak.position) - ref, static_cast<double>(q)));
            if (distance < best_distance) {
                best_distance = distance;
                best = shift;
            }
        }
        report.shifts.push_back(best);
    }
    return report;
}

std::vector<Peak> highest_peaks(const PeakReport &report, size_t k) {
    std::vector<Peak> peaks = report.peaks;
    std::stable_sort(peaks.begin(), peaks.end(), [](const Peak &a, const Peak &b) {
        return a.height > b.height;
    });
    peaks.resize(std::min(k, peaks.size()));
    std::sort(peaks.begin(), peaks.end(), [](const Peak &a, const Peak &b) {
        return a.position < b.position;
    });
    return peaks;
}

std::vector<bool> recovery_mask(const ShorInstance &inst, uint64_t multiplier_bound) {
    if (!inst.has_number()) {
        throw std::invalid_argument("order recovery needs an instance built from (N, y)");
    }
    std::vector<uint8_t> hits(inst.dim, 0);
    detail::parallel_for(inst.dim, [&](size_t c) {
        auto r = recover_order(c, inst.dim, inst.number, inst.base, multiplier_bound);
        hits[c] = r.has_value() && *r == inst.order;
    });
    return std::vector<bool>(hits.begin(), hits.end());
}

double success_probability(std::span<const double> values, const std::vector<bool> &mask) {
    if (values.size() != mask.size()) {
        throw std::invalid_argument("success_probability: spectrum and mask differ in length");
    }
    double total = 0.0, hit = 0.0;
    for (size_t c = 0; c < values.size(); ++c) {
        total += values[c];
        if (mask[c]) {
            hit += values[c];
        }
    }
    if (!(total > 0.0)) {
        return 0.0;
    }
    return std::clamp(hit / total, 0.0, 1.0);
}

double success_probability(const Spectrum &spectrum, uint64_t multiplier_bound) {
    return success_probability(spectrum.values, recovery_mask(spectrum.instance, multiplier_bound));
}

ErrorModel model_for_magnitude(ErrorMode mode, double magnitude, const ErrorModel &base) {
    ErrorModel model = base;
    model.mode = mode;
    switch (mode) {
        case ErrorMode::None:
            break;
        case ErrorMode::Systematic:
            model.delta0 = magnitude;
            break;
        case ErrorMode::Uniform:
            model.s_max = magnitude;
            break;
        case ErrorMode::Gaussian:
            model.sigma0 = magnitude;
            break;
    }
    return model;
}

SweepResult threshold_sweep(
    const ShorInstance &inst, ErrorMode mode, std::vector<double> magnitudes, const SweepOptions &options) {
    if (magnitudes.empty()) {
        throw std::invalid_argument("threshold_sweep: magnitude grid is empty");
    }
    for (size_t i = 0; i < magnitudes.size(); ++i) {
        if (!(magnitudes[i] >= 0.0) || (i > 0 && magnitudes[i] < magnitudes[i - 1])) {
            throw std::invalid_argument("threshold_sweep: magnitudes must be nonnegative and ascending");
        }
    }
    if (!(options.eta > 0.0 && options.eta <= 1.0)) {
        throw std::invalid_argument("threshold_sweep: eta must lie in (0, 1]");
    }
    if (options.n_realizations == 0) {
        throw std::invalid_argument("threshold_sweep: n_realizations must be >= 1");
    }

    const auto mask = recovery_mask(inst, options.multiplier_bound);
    SweepResult out;
    out.mode = mode;
    out.eta = options.eta;
    out.magnitudes = std::move(magnitudes);
    out.baseline = success_probability(noiseless_spectrum(inst).values, mask);

    const ErrorModel probe = model_for_magnitude(mode, 1.0, options.base);
    out.realizations = probe.is_deterministic() ? 1 : options.n_realizations;

    for (double m : out.magnitudes) {
        ErrorModel model = model_for_magnitude(mode, m, options.base);
        double sum = 0.0;
        ordered_map_reduce(
            out.realizations,
            [&](size_t i) {
                return success_probability(
                    combined_spectrum(inst, model, derive_seed(options.master_seed, i)).values, mask);
            },
            [&](size_t, double p) {
                sum += p;
            });
        out.success_probs.push_back(sum / static_cast<double>(out.realizations));
    }

    if (out.baseline > 0.0) {
        const double bar = options.eta * out.baseline;
        for (size_t i = 0; i < out.magnitudes.size() && out.success_probs[i] >= bar; ++i) {
            out.threshold = out.magnitudes[i];
        }
    }
    return out;
}

double mean_tv_from_noiseless(
    const ShorInstance &inst, const ErrorModel &model, size_t n_realizations, uint64_t master_seed) {
    if (n_realizations == 0) {
        throw std::invalid_argument("mean_tv_from_noiseless: n_realizations must be >= 1");
    }
    const Spectrum reference = noiseless_spectrum(inst);
    double sum = 0.0;
    ordered_map_reduce(
        n_realizations,
        [&](size_t i) {
            return total_variation(combined_spectrum(inst, model, derive_seed(master_seed, i)).values, reference.values);
        },
        [&](size_t, double tv) {
            sum += tv;
        });
    return sum / static_cast<double>(n_realizations);
}

}  // namespace shorsim
