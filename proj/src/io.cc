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

#include "shorsim/io.h"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace shorsim {

namespace {

// Shortest representation that parses back to the same double.
std::string format_short(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, end);
}

std::string yes_no(bool b) {
    return b ? "true" : "false";
}

}  // namespace

std::string format_real(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.16e", value);
    return buf;
}

void write_spectrum_csv(std::ostream &out, const Spectrum &spectrum) {
    out << "c,probability\n";
    for (uint64_t c = 0; c < spectrum.values.size(); ++c) {
        out << c << ',' << format_real(spectrum.values[c]) << '\n';
    }
}

void write_stddev_csv(std::ostream &out, const std::vector<double> &stddev) {
    out << "c,stddev\n";
    for (uint64_t c = 0; c < stddev.size(); ++c) {
        out << c << ',' << format_real(stddev[c]) << '\n';
    }
}

std::vector<double> read_spectrum_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line) || line != "c,probability") {
        throw std::runtime_error("spectrum CSV must start with 'c,probability'");
    }
    std::vector<double> values;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw std::runtime_error("spectrum CSV row without a comma: " + line);
        }
        uint64_t c = 0;
        const char *begin = line.data();
        auto [p1, e1] = std::from_chars(begin, begin + comma, c);
        if (e1 != std::errc() || p1 != begin + comma) {
            throw std::runtime_error("bad index in spectrum CSV row: " + line);
        }
        if (c != values.size()) {
            throw std::runtime_error("spectrum CSV rows must be consecutive from 0");
        }
        double v = 0.0;
        auto [p2, e2] = std::from_chars(begin + comma + 1, begin + line.size(), v);
        if (e2 != std::errc() || p2 != begin + line.size()) {
            throw std::runtime_error("bad probability in spectrum CSV row: " + line);
        }
        values.push_back(v);
    }
    return values;
}

Metadata spectrum_metadata(const Spectrum &spectrum) {
    const auto &inst = spectrum.instance;
    Metadata meta{
        {"method", std::string(to_string(spectrum.method))},
        {"q", std::to_string(inst.dim)},
        {"L", std::to_string(inst.num_qubits)},
        {"r", std::to_string(inst.order)},
        {"l", std::to_string(inst.offset)},
        {"support", std::to_string(inst.support)},
        {"support_equals_q_over_r", yes_no(inst.order_divides_dim() && inst.support == inst.dim / inst.order)},
    };
    if (inst.has_number()) {
        meta.emplace_back("N", std::to_string(inst.number));
        meta.emplace_back("y", std::to_string(inst.base));
    }
    meta.emplace_back("relaxed_register_size", yes_no(inst.relaxed_register_size));
    if (spectrum.model) {
        const auto &m = *spectrum.model;
        meta.emplace_back("model", std::string(to_string(m.mode)));
        meta.emplace_back("delta0", format_short(m.delta0));
        meta.emplace_back("s_max", format_short(m.s_max));
        meta.emplace_back("sigma0", format_short(m.sigma0));
        meta.emplace_back("amplitude_errors", yes_no(m.include_amplitude_errors));
        meta.emplace_back("init_delta", format_short(m.init_delta));
    }
    meta.emplace_back("seed", spectrum.realization_seed ? std::to_string(*spectrum.realization_seed) : "none");
    meta.emplace_back("normalized", yes_no(spectrum.normalized));
    if (spectrum.method == SpectrumMethod::ClosedForm) {
        meta.emplace_back("singular_fallbacks", std::to_string(spectrum.singular_fallbacks));
    }
    return meta;
}

void write_metadata(std::ostream &out, const Metadata &meta) {
    for (const auto &[key, value] : meta) {
        out << key << '=' << value << '\n';
    }
}

void write_sweep_csv(std::ostream &out, const SweepResult &sweep) {
    out << "magnitude,success_probability\n";
    for (size_t i = 0; i < sweep.magnitudes.size(); ++i) {
        out << format_short(sweep.magnitudes[i]) << ',' << format_real(sweep.success_probs[i]) << '\n';
    }
    out << "# threshold=" << (sweep.threshold ? format_short(*sweep.threshold) : "none")
        << " eta=" << format_short(sweep.eta) << " baseline=" << format_real(sweep.baseline) << '\n';
}

}  // namespace shorsim
