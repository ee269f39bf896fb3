// Copyright 2026 The pie-lab Authors
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

#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "pielab/channel.hpp"
#include "pielab/circuit.hpp"
#include "pielab/entropy_cert.hpp"
#include "pielab/inverse_emre.hpp"
#include "pielab/mitigation.hpp"
#include "pielab/noise.hpp"
#include "pielab/simulator.hpp"

namespace pielab::io {

using json = nlohmann::ordered_json;

/// Reads a whole file; ConfigError when it cannot be opened.
std::string read_text(const std::string &path);
json read_json(const std::string &path);
void write_text(const std::string &path, const std::string &text);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

json circuit_to_json(const Circuit &c);
Circuit circuit_from_json(const json &j);

json observable_to_json(const Observable &o);
Observable observable_from_json(const json &j);

NoiseSpec noise_spec_from_json(const json &j, NoiseScope scope = NoiseScope::Both);
json noise_spec_to_json(const NoiseSpec &s);

/// Dataset CSV with header lambda,value,std. ParseError cites the 1-based line.
std::vector<DataPoint> parse_dataset_csv(std::istream &in);
std::vector<DataPoint> read_dataset_csv(const std::string &path);
std::string dataset_csv(const std::vector<DataPoint> &points);

/// Rows (p_x, p_y, p_z, total) of a Pauli probability or rate table.
std::vector<std::array<double, 4>> read_pauli_table(const std::string &path);

json fit_to_json(const FitResult &r);
json qpd_to_json(const Qpd &q);
json cert_to_json(const CertReport &r);

/// Channel document: {"kind": "unitary"|"kraus"|"ptm"|"choi"|"gate"|"noise", ...}.
/// Complex entries are [re, im] pairs or plain numbers.
Channel channel_from_json(const json &j);

}  // namespace pielab::io
