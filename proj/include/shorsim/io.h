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

#ifndef SHORSIM_IO_H
#define SHORSIM_IO_H

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "shorsim/experiment.h"
#include "shorsim/spectrum.h"

namespace shorsim {

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// 17 significant digits in scientific notation; parses back to the same double.
std::string format_real(double value);

/// `c,probability` header, then one row per c ascending.
void write_spectrum_csv(std::ostream &out, const Spectrum &spectrum);
/// Same layout with a `c,stddev` header.
void write_stddev_csv(std::ostream &out, const std::vector<double> &stddev);

/// Parses a spectrum CSV back to its values. Throws std::runtime_error on a
/// malformed header, a non-numeric field, or rows out of order.
std::vector<double> read_spectrum_csv(std::istream &in);

/// method, q, L, r, l, support, N, y, model fields, seed, normalized, fallbacks.
Metadata spectrum_metadata(const Spectrum &spectrum);

/// key=value lines.
void write_metadata(std::ostream &out, const Metadata &meta);

/// `magnitude,success_probability` rows and a
/// `# threshold=<value|none> eta=<eta> baseline=<value>` footer.
void write_sweep_csv(std::ostream &out, const SweepResult &sweep);

}  // namespace shorsim

#endif
