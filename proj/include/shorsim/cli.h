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

#ifndef SHORSIM_CLI_H
#define SHORSIM_CLI_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "shorsim/errmodel.h"
#include "shorsim/numth.h"

namespace shorsim::cli {

enum class Command { Spectrum, Circuit, Ensemble, Sweep, Factor };

enum class SpectrumEngine { Direct, Closed };

struct RunConfig {
    Command command = Command::Spectrum;
    ShorInstance instance;
    ErrorModel model;
    SpectrumEngine engine = SpectrumEngine::Direct;
    uint64_t seed = 42;
    size_t realizations = 1;
    bool normalize = false;
    std::optional<std::string> out;
    double eta = 0.5;
    uint64_t multiplier_bound = kDefaultMultiplierBound;
    std::vector<double> magnitudes;
    size_t shots = 100;
    double height_floor = 0.1;
};

/// Invalid or conflicting flags. Maps to exit code 2.
class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// `--help` was given; carries the rendered help text. Maps to exit code 0.
class HelpRequested : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Decimal or 0x-prefixed hexadecimal 64-bit seed.
std::optional<uint64_t> parse_seed(const std::string &text);

/// Comma-separated list, or start:stop:step with the stop included when it lands on the grid.
std::vector<double> parse_magnitudes(const std::string &text);

/// Parses the subcommand and flags (without the program name).
RunConfig parse_config(const std::vector<std::string> &args);

/// Executes a parsed configuration. Returns 0 on success, 1 on runtime failure.
int run(const RunConfig &config, std::ostream &out, std::ostream &err);

/// parse_config + run with exit codes 0 / 1 / 2.
int main_entry(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace shorsim::cli

#endif
