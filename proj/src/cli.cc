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

#include "shorsim/cli.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "shorsim/experiment.h"
#include "shorsim/io.h"
#include "shorsim/qcircuit.h"
#include "shorsim/spectrum.h"

namespace shorsim::cli {

namespace {

struct RawFlags {
    std::optional<uint64_t> number;
    std::optional<uint64_t> base;
    std::optional<unsigned> num_qubits;
    std::optional<uint64_t> order;
    uint64_t offset = 0;
    std::string model = "none";
    double delta0 = 0.0;
    double s_max = 0.0;
    double sigma0 = 0.0;
    bool amp_errors = false;
    double init_delta = 0.0;
    std::string seed = "42";
    std::string method = "direct";
    std::string magnitudes;
};

void add_common(CLI::App *sub, RawFlags &raw, RunConfig &cfg) {
    sub->add_option("--N", raw.number, "number to factor (with --y)");
    sub->add_option("--y", raw.base, "base of the modular exponentiation, coprime to N");
    sub->add_option("--L", raw.num_qubits, "first-register width for a synthetic instance (with --r)");
    sub->add_option("--r", raw.order, "order for a synthetic instance");
    sub->add_option("--l", raw.offset, "offset left by the second-register measurement")->capture_default_str();
    sub->add_option("--model", raw.model, "none | systematic | uniform | gaussian")->capture_default_str();
    sub->add_option("--delta0", raw.delta0, "systematic offset (rad)");
    sub->add_option("--smax", raw.s_max, "uniform half-width (rad)");
    sub->add_option("--sigma", raw.sigma0, "Gaussian standard deviation (rad)");
    sub->add_flag("--amp-errors", raw.amp_errors, "also draw amplitude errors");
    sub->add_option("--init-delta", raw.init_delta, "initialization rotation error (rad)");
    sub->add_option("--seed", raw.seed, "decimal or 0x-hex seed")->capture_default_str();
    sub->add_option("--out", cfg.out, "output CSV path (stdout when absent)");
}

ShorInstance build_instance(const RawFlags &raw) {
    bool numeric = raw.number.has_value() || raw.base.has_value();
    bool synthetic = raw.num_qubits.has_value() || raw.order.has_value();
    if (numeric && synthetic) {
        throw ConfigError("give either --N/--y or --L/--r, not both");
    }
    if (!numeric && !synthetic) {
        throw ConfigError("an instance is required: --N and --y, or --L and --r");
    }
    try {
        if (numeric) {
            if (!raw.number || !raw.base) {
                throw ConfigError("--N and --y must be given together");
            }
            return ShorInstance::from_number(*raw.number, *raw.base, raw.offset);
        }
        if (!raw.num_qubits || !raw.order) {
            throw ConfigError("--L and --r must be given together");
        }
        return ShorInstance::synthetic(*raw.num_qubits, *raw.order, raw.offset);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
}

void write_output(const RunConfig &cfg, std::ostream &out, const std::function<void(std::ostream &)> &body,
                  const Metadata &meta) {
    if (!cfg.out) {
        body(out);
        return;
    }
    std::ofstream file(*cfg.out, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open " + *cfg.out + " for writing");
    }
    body(file);
    std::ofstream side(*cfg.out + ".meta", std::ios::binary);
    if (!side) {
        throw std::runtime_error("cannot open " + *cfg.out + ".meta for writing");
    }
    write_metadata(side, meta);
    if (!file || !side) {
        throw std::runtime_error("write failed for " + *cfg.out);
    }
}

std::string join_peaks(const PeakReport &report) {
    std::ostringstream ss;
    ss << "peaks=";
    for (size_t i = 0; i < report.peaks.size(); ++i) {
        ss << (i ? "," : "") << report.peaks[i].position;
    }
    ss << " shifts=";
    for (size_t i = 0; i < report.shifts.size(); ++i) {
        ss << (i ? "," : "") << report.shifts[i];
    }
    return ss.str();
}

// Summaries go to stdout unless the CSV itself is going there.
std::ostream &summary_stream(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    return cfg.out ? out : err;
}

int run_spectrum(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    const auto &model = cfg.model;
    Spectrum spec;
    bool plain = model.mode == ErrorMode::None && model.init_delta == 0.0;
    if (cfg.command == Command::Circuit) {
        spec = circuit_spectrum(cfg.instance, model, cfg.seed);
    } else if (cfg.engine == SpectrumEngine::Closed) {
        spec = systematic_spectrum_closed_form(cfg.instance, model.mode == ErrorMode::None ? 0.0 : model.delta0);
    } else if (plain) {
        spec = noiseless_spectrum(cfg.instance);
    } else {
        spec = combined_spectrum(cfg.instance, model, cfg.seed);
    }
    if (cfg.normalize) {
        spec.normalize();
    }
    Metadata meta = spectrum_metadata(spec);
    meta.insert(meta.begin(), {"command", cfg.command == Command::Circuit ? "circuit" : "spectrum"});
    write_output(cfg, out, [&](std::ostream &os) { write_spectrum_csv(os, spec); }, meta);
    auto report = peak_report(spec, cfg.height_floor);
    summary_stream(cfg, out, err) << to_string(spec.method) << ": q=" << spec.dim() << " r=" << cfg.instance.order
                                  << ' ' << join_peaks(report) << '\n';
    return 0;
}

int run_ensemble(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    auto result = ensemble_spectrum(cfg.instance, cfg.model, cfg.realizations, cfg.seed);
    if (cfg.normalize) {
        result.mean.normalize();
    }
    Metadata meta = spectrum_metadata(result.mean);
    meta.insert(meta.begin(), {"command", "ensemble"});
    meta.emplace_back("master_seed", std::to_string(cfg.seed));
    meta.emplace_back("realizations", std::to_string(result.realizations));
    meta.emplace_back("requested_realizations", std::to_string(result.requested_realizations));
    if (result.realizations != result.requested_realizations) {
        meta.emplace_back("note", "deterministic model evaluated once");
    }
    write_output(cfg, out, [&](std::ostream &os) { write_spectrum_csv(os, result.mean); }, meta);
    if (cfg.out) {
        std::ofstream side(*cfg.out + ".std.csv", std::ios::binary);
        write_stddev_csv(side, result.stddev);
    }
    auto report = peak_report(result.mean, cfg.height_floor);
    summary_stream(cfg, out, err) << "ensemble: realizations=" << result.realizations << ' ' << join_peaks(report)
                                  << '\n';
    return 0;
}

int run_sweep(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    SweepOptions options;
    options.n_realizations = cfg.realizations;
    options.eta = cfg.eta;
    options.master_seed = cfg.seed;
    options.multiplier_bound = cfg.multiplier_bound;
    options.base = cfg.model;
    auto sweep = threshold_sweep(cfg.instance, cfg.model.mode, cfg.magnitudes, options);
    const auto &inst = cfg.instance;
    Metadata meta{
        {"command", "sweep"},
        {"N", std::to_string(inst.number)},
        {"y", std::to_string(inst.base)},
        {"q", std::to_string(inst.dim)},
        {"r", std::to_string(inst.order)},
        {"l", std::to_string(inst.offset)},
        {"model", std::string(to_string(cfg.model.mode))},
        {"base_model", cfg.model.describe()},
        {"master_seed", std::to_string(cfg.seed)},
        {"realizations", std::to_string(sweep.realizations)},
        {"multiplier_bound", std::to_string(cfg.multiplier_bound)},
        {"eta", format_real(sweep.eta)},
        {"threshold_rule", "last magnitude before success first drops below eta*baseline"},
    };
    write_output(cfg, out, [&](std::ostream &os) { write_sweep_csv(os, sweep); }, meta);
    auto &summary = summary_stream(cfg, out, err);
    summary << "sweep: baseline=" << format_real(sweep.baseline) << " threshold=";
    if (sweep.threshold) {
        summary << *sweep.threshold;
    } else {
        summary << "none";
    }
    summary << '\n';
    return 0;
}

int run_factor(const RunConfig &cfg, std::ostream &out) {
    const ShorInstance &inst = cfg.instance;
    const uint64_t q = inst.dim;
    const uint64_t r = inst.order;
    Rng rng(cfg.seed);

    // Cumulative distributions per offset, built on first use.
    std::map<uint64_t, std::vector<double>> cdf_by_offset;
    auto cdf_for = [&](uint64_t offset) -> const std::vector<double> & {
        auto it = cdf_by_offset.find(offset);
        if (it != cdf_by_offset.end()) {
            return it->second;
        }
        auto shifted = ShorInstance::from_number(inst.number, inst.base, offset, inst.num_qubits);
        Spectrum spec = combined_spectrum(shifted, cfg.model, cfg.seed);
        std::vector<double> cdf(spec.values.size());
        double total = spec.total();
        double acc = 0.0;
        for (size_t c = 0; c < cdf.size(); ++c) {
            acc += spec.values[c] / total;
            cdf[c] = acc;
        }
        return cdf_by_offset.emplace(offset, std::move(cdf)).first->second;
    };

    size_t recovered = 0;
    std::optional<uint64_t> best;
    for (size_t shot = 0; shot < cfg.shots; ++shot) {
        // Second register: offset l occurs with probability M_l / q.
        double u = rng.uniform01() * static_cast<double>(q);
        uint64_t offset = r - 1;
        double acc = 0.0;
        for (uint64_t l = 0; l < r; ++l) {
            acc += static_cast<double>((q - 1 - l) / r + 1);
            if (u < acc) {
                offset = l;
                break;
            }
        }
        const auto &cdf = cdf_for(offset);
        double v = rng.uniform01();
        uint64_t c = static_cast<uint64_t>(std::upper_bound(cdf.begin(), cdf.end(), v) - cdf.begin());
        c = std::min<uint64_t>(c, q - 1);
        auto found = recover_order(c, q, inst.number, inst.base, cfg.multiplier_bound);
        if (found) {
            ++recovered;
            best = best ? std::min(*best, *found) : *found;
        }
    }

    out << "factor: N=" << inst.number << " y=" << inst.base << " q=" << q << " shots=" << cfg.shots
        << " recovered=" << recovered;
    if (!best) {
        out << " r=none (retry with more shots)\n";
        return 0;
    }
    out << " r=" << *best;
    if (*best % 2 != 0) {
        out << " odd order; retry with new y\n";
        return 0;
    }
    uint64_t half = mod_pow(inst.base, *best / 2, inst.number);
    if (half == inst.number - 1 || half == 1) {
        out << " y^(r/2) = +-1 mod N; retry with new y\n";
        return 0;
    }
    uint64_t f1 = gcd(half - 1, inst.number);
    uint64_t f2 = gcd(half + 1, inst.number);
    if (f1 > f2) {
        std::swap(f1, f2);
    }
    out << " factors=" << f1 << ',' << f2 << '\n';
    return 0;
}

}  // namespace

std::optional<uint64_t> parse_seed(const std::string &text) {
    if (text.empty()) {
        return std::nullopt;
    }
    int base = 10;
    const char *begin = text.data();
    const char *end = text.data() + text.size();
    if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
        base = 16;
        begin += 2;
    }
    uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(begin, end, value, base);
    if (ec != std::errc() || ptr != end) {
        return std::nullopt;
    }
    return value;
}

std::vector<double> parse_magnitudes(const std::string &text) {
    auto to_double = [](const std::string &s) {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
            throw ConfigError("bad magnitude '" + s + "'");
        }
        return v;
    };
    std::vector<double> out;
    if (std::count(text.begin(), text.end(), ':') == 2) {
        auto p1 = text.find(':');
        auto p2 = text.find(':', p1 + 1);
        double start = to_double(text.substr(0, p1));
        double stop = to_double(text.substr(p1 + 1, p2 - p1 - 1));
        double step = to_double(text.substr(p2 + 1));
        if (!(step > 0.0) || stop < start) {
            throw ConfigError("grid needs step > 0 and stop >= start");
        }
        auto count = static_cast<size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        for (size_t i = 0; i < count; ++i) {
            out.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
        }
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(to_double(item));
    }
    if (out.empty()) {
        throw ConfigError("empty magnitude list");
    }
    return out;
}

RunConfig parse_config(const std::vector<std::string> &args) {
    RunConfig cfg;
    RawFlags raw;
    CLI::App app{"Shor order finding with imperfect gates: spectra, circuits, ensembles, sweeps"};
    app.name("shorsim");
    app.require_subcommand(1);

    auto *spectrum = app.add_subcommand("spectrum", "relative probabilities P_c by direct sum or closed form");
    auto *circuit = app.add_subcommand("circuit", "P_c from a gate-level noisy Fourier transform");
    auto *ensemble = app.add_subcommand("ensemble", "mean P_c over random error realizations");
    auto *sweep = app.add_subcommand("sweep", "order-recovery success versus error magnitude");
    auto *factor = app.add_subcommand("factor", "sample measurements and recover r and the factors of N");
    for (auto *sub : {spectrum, circuit, ensemble, sweep, factor}) {
        add_common(sub, raw, cfg);
    }
    for (auto *sub : {spectrum, circuit, ensemble}) {
        sub->add_flag("--normalize", cfg.normalize, "divide P_c by its sum");
        sub->add_option("--height-floor", cfg.height_floor, "peak floor as a fraction of the maximum")
            ->capture_default_str();
    }
    spectrum->add_option("--method", raw.method, "direct | closed")->capture_default_str();
    for (auto *sub : {ensemble, sweep}) {
        sub->add_option("--realizations", cfg.realizations, "error realizations")->capture_default_str();
    }
    sweep->add_option("--eta", cfg.eta, "threshold fraction of the error-free success")->capture_default_str();
    sweep->add_option("--magnitudes", raw.magnitudes, "comma list or start:stop:step")->required();
    for (auto *sub : {sweep, factor}) {
        sub->add_option("--multiplier-bound", cfg.multiplier_bound, "multiples tried per convergent")
            ->capture_default_str();
    }
    factor->add_option("--shots", cfg.shots, "number of measurements")->capture_default_str();

    std::vector<const char *> argv{"shorsim"};
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &) {
        throw HelpRequested(app.help());
    } catch (const CLI::CallForAllHelp &) {
        throw HelpRequested(app.help("", CLI::AppFormatMode::All));
    } catch (const CLI::ParseError &e) {
        throw ConfigError(e.what());
    }
    for (auto *sub : {spectrum, circuit, ensemble, sweep, factor}) {
        if (sub->parsed()) {
            if (sub == spectrum) cfg.command = Command::Spectrum;
            if (sub == circuit) cfg.command = Command::Circuit;
            if (sub == ensemble) cfg.command = Command::Ensemble;
            if (sub == sweep) cfg.command = Command::Sweep;
            if (sub == factor) cfg.command = Command::Factor;
        }
    }

    auto mode = parse_error_mode(raw.model);
    if (!mode) {
        throw ConfigError("unknown --model '" + raw.model + "'");
    }
    cfg.model.mode = *mode;
    cfg.model.delta0 = raw.delta0;
    cfg.model.s_max = raw.s_max;
    cfg.model.sigma0 = raw.sigma0;
    cfg.model.include_amplitude_errors = raw.amp_errors;
    cfg.model.init_delta = raw.init_delta;
    try {
        cfg.model.validate();
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }

    auto seed = parse_seed(raw.seed);
    if (!seed) {
        throw ConfigError("--seed must be decimal or 0x-hex, got '" + raw.seed + "'");
    }
    cfg.seed = *seed;

    if (raw.method == "direct") {
        cfg.engine = SpectrumEngine::Direct;
    } else if (raw.method == "closed") {
        cfg.engine = SpectrumEngine::Closed;
        if (!cfg.model.is_deterministic() || cfg.model.include_amplitude_errors || cfg.model.init_delta != 0.0) {
            throw ConfigError("--method closed only applies to --model none or systematic without extra errors");
        }
    } else {
        throw ConfigError("--method must be direct or closed");
    }
    if (cfg.realizations == 0) {
        throw ConfigError("--realizations must be >= 1");
    }
    if (!(cfg.eta > 0.0 && cfg.eta <= 1.0)) {
        throw ConfigError("--eta must lie in (0, 1]");
    }
    if (!(cfg.height_floor > 0.0 && cfg.height_floor <= 1.0)) {
        throw ConfigError("--height-floor must lie in (0, 1]");
    }
    if (cfg.multiplier_bound == 0) {
        throw ConfigError("--multiplier-bound must be >= 1");
    }

    cfg.instance = build_instance(raw);
    if ((cfg.command == Command::Sweep || cfg.command == Command::Factor) && !cfg.instance.has_number()) {
        throw ConfigError("order recovery needs --N and --y");
    }
    if (cfg.command == Command::Circuit && cfg.instance.num_qubits > kMaxCircuitQubits) {
        throw ConfigError("circuit simulation is limited to 24 qubits");
    }
    if (cfg.command == Command::Sweep) {
        cfg.magnitudes = parse_magnitudes(raw.magnitudes);
        for (size_t i = 0; i < cfg.magnitudes.size(); ++i) {
            if (cfg.magnitudes[i] < 0.0 || (i > 0 && cfg.magnitudes[i] < cfg.magnitudes[i - 1])) {
                throw ConfigError("--magnitudes must be nonnegative and ascending");
            }
        }
    }
    if (cfg.command == Command::Factor && cfg.shots == 0) {
        throw ConfigError("--shots must be >= 1");
    }
    return cfg;
}

int run(const RunConfig &config, std::ostream &out, std::ostream &err) {
    try {
        switch (config.command) {
            case Command::Spectrum:
            case Command::Circuit:
                return run_spectrum(config, out, err);
            case Command::Ensemble:
                return run_ensemble(config, out, err);
            case Command::Sweep:
                return run_sweep(config, out, err);
            case Command::Factor:
                return run_factor(config, out);
        }
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

int main_entry(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    RunConfig config;
    try {
        config = parse_config(args);
    } catch (const HelpRequested &h) {
        out << h.what();
        return 0;
    } catch (const ConfigError &e) {
        std::string msg = e.what();
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        err << "shorsim: " << msg << '\n';
        return 2;
    }
    return run(config, out, err);
}

}  // namespace shorsim::cli
