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

#include "pielab/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pielab/error.hpp"

namespace pielab::io {

std::string read_text(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(Errc::ConfigError, "cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json(const std::string &path) {
    const std::string text = read_text(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        fail(Errc::ParseError, path + ": " + e.what());
    }
}

void write_text(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        fail(Errc::ConfigError, "cannot write '" + path + "'");
    }
    out << text;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

template <typename T>
T get_or(const json &j, const char *key, T fallback) {
    return j.contains(key) ? j.at(key).get<T>() : fallback;
}

cplx parse_complex(const json &v) {
    if (v.is_number()) {
        return {v.get<double>(), 0.0};
    }
    if (v.is_array() && v.size() == 2) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    fail(Errc::ParseError, "complex entries must be numbers or [re, im]");
}

ComplexMatrix parse_complex_matrix(const json &rows) {
    if (!rows.is_array() || rows.empty()) {
        fail(Errc::ParseError, "matrix must be a nonempty array of rows");
    }
    const auto n = static_cast<Eigen::Index>(rows.size());
    ComplexMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const json &row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
            fail(Errc::DimensionMismatch, "matrix must be square");
        }
        for (Eigen::Index k = 0; k < n; ++k) {
            m(i, k) = parse_complex(row[static_cast<std::size_t>(k)]);
        }
    }
    return m;
}

json real_matrix_json(const RealMatrix &m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            row.push_back(m(i, k));
        }
        rows.push_back(row);
    }
    return rows;
}

Gate gate_from_json(const json &g, int width) {
    const GateKind kind = gate_kind_from_name(g.at("name").get<std::string>());
    const auto targets = g.at("targets").get<std::vector<int>>();
    if (static_cast<int>(targets.size()) != gate_arity(kind)) {
        fail(Errc::InvalidParams, "gate " + std::string(gate_name(kind)) + " needs " +
                                      std::to_string(gate_arity(kind)) + " targets");
    }
    for (int t : targets) {
        if (t < 0 || t >= width) {
            fail(Errc::WidthMismatch, "gate target outside the register");
        }
    }
    const double angle = get_or<double>(g, "angle", 0.0);
    return targets.size() == 1 ? Gate::one(kind, targets[0], angle) : Gate::two(kind, targets[0], targets[1], angle);
}

}  // namespace

json circuit_to_json(const Circuit &c) {
    json gates = json::array();
    for (const Gate &g : c.gates()) {
        json jg;
        jg["name"] = std::string(gate_name(g.kind));
        jg["targets"] = std::vector<int>(g.qubits().begin(), g.qubits().end());
        if (gate_has_angle(g.kind)) {
            jg["angle"] = g.angle;
        }
        gates.push_back(jg);
    }
    json j;
    j["qubits"] = c.qubits();
    j["gates"] = gates;
    return j;
}

Circuit circuit_from_json(const json &j) {
    try {
        Circuit c(j.at("qubits").get<int>());
        for (const json &g : j.at("gates")) {
            c.add(gate_from_json(g, c.qubits()));
        }
        return c;
    } catch (const json::exception &e) {
        fail(Errc::ParseError, std::string("circuit: ") + e.what());
    }
}

json observable_to_json(const Observable &o) {
    json terms = json::array();
    for (const auto &t : o.terms()) {
        json jt;
        jt["pauli"] = t.letters();
        jt["coeff"] = t.coefficient();
        terms.push_back(jt);
    }
    json j;
    j["qubits"] = o.qubits();
    j["terms"] = terms;
    j["offset"] = o.offset();
    return j;
}

Observable observable_from_json(const json &j) {
    try {
        std::vector<PauliString> terms;
        for (const json &t : j.at("terms")) {
            terms.emplace_back(t.at("pauli").get<std::string>(), t.at("coeff").get<double>());
        }
        return Observable(j.at("qubits").get<int>(), std::move(terms), get_or<double>(j, "offset", 0.0));
    } catch (const json::exception &e) {
        fail(Errc::ParseError, std::string("observable: ") + e.what());
    }
}

NoiseSpec noise_spec_from_json(const json &j, NoiseScope scope) {
    try {
        const std::string kind = j.at("kind").get<std::string>();
        NoiseSpec s;
        s.scope = scope;
        if (kind == "depolarizing") {
            s.kind = Depolarizing{j.at("omega").get<double>()};
        } else if (kind == "dephasing") {
            s.kind = Dephasing{j.at("p").get<double>()};
        } else if (kind == "mixed_pauli") {
            s.kind = MixedPauli{get_or(j, "p_x", 0.0), get_or(j, "p_y", 0.0), get_or(j, "p_z", 0.0)};
        } else if (kind == "pauli_lindblad") {
            s.kind = PauliLindblad{get_or(j, "r_x", 0.0), get_or(j, "r_y", 0.0), get_or(j, "r_z", 0.0)};
        } else {
            fail(Errc::ConfigError, "unknown noise kind '" + kind + "'");
        }
        validate(s);
        return s;
    } catch (const json::exception &e) {
        fail(Errc::ConfigError, std::string("noise: ") + e.what());
    }
}

json noise_spec_to_json(const NoiseSpec &s) {
    json j;
    std::visit(
        [&](const auto &k) {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, Depolarizing>) {
                j["kind"] = "depolarizing";
                j["omega"] = k.omega;
            } else if constexpr (std::is_same_v<T, Dephasing>) {
                j["kind"] = "dephasing";
                j["p"] = k.p;
            } else if constexpr (std::is_same_v<T, MixedPauli>) {
                j["kind"] = "mixed_pauli";
                j["p_x"] = k.px;
                j["p_y"] = k.py;
                j["p_z"] = k.pz;
            } else {
                j["kind"] = "pauli_lindblad";
                j["r_x"] = k.rx;
                j["r_y"] = k.ry;
                j["r_z"] = k.rz;
            }
        },
        s.kind);
    return j;
}

namespace {

std::vector<std::string> split_csv(const std::string &line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

double parse_number(const std::string &cell, std::size_t line_no) {
    double v = 0.0;
    const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (cell.empty() || res.ec != std::errc() || res.ptr != cell.data() + cell.size() || !std::isfinite(v)) {
        fail(Errc::ParseError, "row " + std::to_string(line_no) + ": '" + cell + "' is not a finite number");
    }
    return v;
}

bool blank(const std::string &line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

}  // namespace

std::vector<DataPoint> parse_dataset_csv(std::istream &in) {
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    std::vector<DataPoint> out;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) {
            continue;
        }
        const auto cells = split_csv(line);
        if (!header) {
            if (cells != std::vector<std::string>{"lambda", "value", "std"}) {
                fail(Errc::ParseError, "row " + std::to_string(line_no) + ": expected header lambda,value,std");
            }
            header = true;
            continue;
        }
        if (cells.size() != 3) {
            fail(Errc::ParseError, "row " + std::to_string(line_no) + ": expected 3 columns, got " +
                                       std::to_string(cells.size()));
        }
        DataPoint p;
        const double lam = parse_number(cells[0], line_no);
        if (lam != std::floor(lam) || lam < 1 || static_cast<long>(lam) % 2 == 0) {
            fail(Errc::ParseError, "row " + std::to_string(line_no) + ": lambda must be an odd positive integer");
        }
        p.lambda = static_cast<int>(lam);
        p.value = parse_number(cells[1], line_no);
        p.std = parse_number(cells[2], line_no);
        if (p.std < 0.0) {
            fail(Errc::ParseError, "row " + std::to_string(line_no) + ": std must be nonnegative");
        }
        out.push_back(p);
    }
    if (!header) {
        fail(Errc::ParseError, "dataset is empty");
    }
    return out;
}

std::vector<DataPoint> read_dataset_csv(const std::string &path) {
    std::istringstream in(read_text(path));
    return parse_dataset_csv(in);
}

std::string dataset_csv(const std::vector<DataPoint> &points) {
    std::string s = "lambda,value,std\n";
    for (const auto &p : points) {
        s += std::to_string(p.lambda) + "," + format_double(p.value) + "," + format_double(p.std) + "\n";
    }
    return s;
}

std::vector<std::array<double, 4>> read_pauli_table(const std::string &path) {
    std::istringstream in(read_text(path));
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    std::vector<std::array<double, 4>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) {
            continue;
        }
        const auto cells = split_csv(line);
        if (!header) {
            if (cells != std::vector<std::string>{"p_x", "p_y", "p_z", "total"}) {
                fail(Errc::ParseError, path + " row " + std::to_string(line_no) + ": expected header p_x,p_y,p_z,total");
            }
            header = true;
            continue;
        }
        if (cells.size() != 4) {
            fail(Errc::ParseError, path + " row " + std::to_string(line_no) + ": expected 4 columns");
        }
        rows.push_back({parse_number(cells[0], line_no), parse_number(cells[1], line_no),
                        parse_number(cells[2], line_no), parse_number(cells[3], line_no)});
    }
    return rows;
}

json fit_to_json(const FitResult &r) {
    json j;
    j["model"] = std::string(model_name(r.model));
    j["params"] = r.params;
    j["covariance"] = real_matrix_json(r.covariance);
    j["mitigated"] = r.mitigated;
    j["variance"] = r.mitigated_variance;
    if (r.s_estimate) {
        j["s_estimate"] = *r.s_estimate;
    } else {
        j["s_estimate"] = nullptr;
    }
    if (r.clamped > 0) {
        j["clamped_points"] = r.clamped;
    }
    return j;
}

json qpd_to_json(const Qpd &q) {
    json j;
    j["paulis"] = q.paulis;
    j["coeffs"] = q.coeffs;
    j["gamma"] = q.gamma;
    j["s_pos"] = q.s_pos;
    j["residual"] = q.residual;
    return j;
}

json cert_to_json(const CertReport &r) {
    json j;
    auto opt = [](const std::optional<double> &v) { return v ? json(*v) : json(nullptr); };
    j["s_direct"] = opt(r.s_direct);
    j["d_max_bits"] = opt(r.d_max_bits);
    j["s_from_slope"] = r.s_from_slope;
    j["relative_gap"] = opt(r.relative_gap);
    j["pie"] = fit_to_json(r.pie);
    return j;
}

Channel channel_from_json(const json &j) {
    try {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "unitary") {
            return Channel::unitary(parse_complex_matrix(j.at("matrix")));
        }
        if (kind == "choi") {
            return Channel::choi(parse_complex_matrix(j.at("matrix")));
        }
        if (kind == "kraus") {
            std::vector<ComplexMatrix> ops;
            for (const json &k : j.at("ops")) {
                ops.push_back(parse_complex_matrix(k));
            }
            return Channel::kraus(std::move(ops));
        }
        if (kind == "ptm") {
            const json &rows = j.at("matrix");
            const auto n = static_cast<Eigen::Index>(rows.size());
            RealMatrix r(n, n);
            for (Eigen::Index i = 0; i < n; ++i) {
                if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != n) {
                    fail(Errc::DimensionMismatch, "PTM must be square");
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    r(i, k) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].get<double>();
                }
            }
            return Channel::ptm(std::move(r));
        }
        if (kind == "gate") {
            const GateKind g = gate_kind_from_name(j.at("name").get<std::string>());
            const Gate gate = gate_arity(g) == 1 ? Gate::one(g, 0, get_or(j, "angle", 0.0))
                                                  : Gate::two(g, 0, 1, get_or(j, "angle", 0.0));
            return Channel::unitary(gate.matrix());
        }
        if (kind == "noise") {
            const int qubits = get_or(j, "qubits", 1);
            Channel noise = channel_for(noise_spec_from_json(j.at("noise")), qubits);
            if (j.contains("after")) {
                const Channel g = channel_from_json(j.at("after"));
                if (g.qubits() != qubits) {
                    fail(Errc::DimensionMismatch, "noise width does not match the gate it follows");
                }
                return compose(noise, g);
            }
            return noise;
        }
        fail(Errc::ParseError, "unknown channel kind '" + kind + "'");
    } catch (const json::exception &e) {
        fail(Errc::ParseError, std::string("channel: ") + e.what());
    }
}

}  // namespace pielab::io
