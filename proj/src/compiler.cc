// Copyright 2026 The spinring Authors
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

#include "spinring/compiler.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <set>
#include <sstream>

#include "spinring/error.h"

namespace spinring {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_number(const std::string &s, const std::string &where) {
    double v = 0.0;
    const auto *end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end) throw ConfigError(where + ": cannot parse number '" + s + "'");
    return v;
}

// Accepts a decimal number or [-][k*]pi[/q].
double parse_angle(const std::string &text, const std::string &where) {
    const auto pi_at = text.find("pi");
    if (pi_at == std::string::npos) return parse_number(text, where);
    std::string head = text.substr(0, pi_at);
    std::string tail = text.substr(pi_at + 2);
    double factor = 1.0;
    if (!head.empty() && head.front() == '-') {
        factor = -1.0;
        head.erase(0, 1);
    }
    if (!head.empty()) {
        if (head.back() != '*') throw ConfigError(where + ": cannot parse angle '" + text + "'");
        head.pop_back();
        factor *= parse_number(head, where);
    }
    if (!tail.empty()) {
        if (tail.front() != '/') throw ConfigError(where + ": cannot parse angle '" + text + "'");
        const double q = parse_number(tail.substr(1), where);
        if (q == 0.0) throw ConfigError(where + ": division by zero in angle '" + text + "'");
        factor /= q;
    }
    return factor * std::numbers::pi;
}

int parse_qubit(const std::string &token, const std::string &where) {
    if (token.size() < 2 || (token[0] != 'q' && token[0] != 'Q')) {
        throw ConfigError(where + ": expected a qubit like q1, got '" + token + "'");
    }
    const double v = parse_number(token.substr(1), where);
    if (v < 1 || v != std::floor(v)) throw ConfigError(where + ": qubit labels start at q1, got '" + token + "'");
    return static_cast<int>(v) - 1;
}

int gate_arity(LogicalGate gate) { return gate == LogicalGate::CPHASE ? 2 : 1; }

GateKind ring_kind(LogicalGate gate) {
    switch (gate) {
        case LogicalGate::RZ:
            return GateKind::Z;
        case LogicalGate::RX:
            return GateKind::X;
        case LogicalGate::CPHASE:
            return GateKind::CPHASE;
    }
    return GateKind::Z;
}

int round_power(int sites, double exponent) {
    return static_cast<int>(std::lround(std::pow(static_cast<double>(sites), exponent)));
}

bool fits(const LayoutGeometry &g, int sites, int blocks) {
    return g.truncation_distance >= 1 && g.gate_length >= 2 * g.truncation_distance &&
           g.span(blocks) <= sites;
}

}  // namespace

std::string to_string(LogicalGate gate) {
    switch (gate) {
        case LogicalGate::RZ:
            return "RZ";
        case LogicalGate::RX:
            return "RX";
        case LogicalGate::CPHASE:
            return "CPHASE";
    }
    return "?";
}

LogicalGate logical_gate_from_string(const std::string &name) {
    if (name == "RZ") return LogicalGate::RZ;
    if (name == "RX") return LogicalGate::RX;
    if (name == "CPHASE") return LogicalGate::CPHASE;
    throw ParameterError("unknown logical gate '" + name + "'");
}

void validate(const LogicalCircuit &circuit) {
    if (circuit.qubits < 1) throw ParameterError("circuit needs at least one qubit");
    for (std::size_t b = 0; b < circuit.blocks.size(); ++b) {
        std::set<int> used;
        for (const auto &op : circuit.blocks[b]) {
            if (static_cast<int>(op.qubits.size()) != gate_arity(op.gate)) {
                throw ParameterError(to_string(op.gate) + " takes " + std::to_string(gate_arity(op.gate)) +
                                     " qubit(s)");
            }
            if (!std::isfinite(op.theta)) throw ParameterError("rotation angle must be finite");
            for (int q : op.qubits) {
                if (q < 0 || q >= circuit.qubits) {
                    throw RangeError("qubit " + std::to_string(q + 1) + " outside a " +
                                     std::to_string(circuit.qubits) + "-qubit circuit");
                }
                if (!used.insert(q).second) {
                    throw ParameterError("block " + std::to_string(b + 1) + " uses qubit " + std::to_string(q + 1) +
                                         " twice");
                }
            }
        }
    }
}

LogicalCircuit parse_circuit(std::istream &in, int qubits) {
    LogicalCircuit circuit;
    int highest = 0;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const std::string where = "line " + std::to_string(line_no);
        std::vector<LogicalOp> block;
        std::stringstream ops(line);
        std::string op_text;
        while (std::getline(ops, op_text, ';')) {
            if (trim(op_text).empty()) continue;
            std::istringstream tokens(op_text);
            std::string name, angle, tok;
            tokens >> name >> angle;
            LogicalOp op;
            try {
                op.gate = logical_gate_from_string(name);
            } catch (const ParameterError &e) {
                throw ConfigError(where + ": " + e.what());
            }
            if (angle.empty()) throw ConfigError(where + ": " + name + " is missing its angle");
            op.theta = parse_angle(angle, where);
            while (tokens >> tok) {
                op.qubits.push_back(parse_qubit(tok, where));
                highest = std::max(highest, op.qubits.back() + 1);
            }
            if (static_cast<int>(op.qubits.size()) != gate_arity(op.gate)) {
                throw ConfigError(where + ": " + name + " takes " + std::to_string(gate_arity(op.gate)) +
                                  " qubit(s)");
            }
            block.push_back(std::move(op));
        }
        if (!block.empty()) circuit.blocks.push_back(std::move(block));
    }
    circuit.qubits = qubits > 0 ? qubits : std::max(highest, 1);
    try {
        validate(circuit);
    } catch (const std::exception &e) {
        throw ConfigError(std::string("invalid circuit: ") + e.what());
    }
    return circuit;
}

LogicalCircuit load_circuit(const std::filesystem::path &path, int qubits) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open circuit file " + path.string());
    return parse_circuit(in, qubits);
}

std::string format_circuit(const LogicalCircuit &circuit) {
    std::ostringstream out;
    out.precision(17);
    for (const auto &block : circuit.blocks) {
        for (std::size_t i = 0; i < block.size(); ++i) {
            if (i) out << "; ";
            out << to_string(block[i].gate) << ' ' << block[i].theta;
            for (int q : block[i].qubits) out << " q" << q + 1;
        }
        out << '\n';
    }
    return out.str();
}

Eigen::MatrixXcd logical_unitary(const LogicalCircuit &circuit) {
    validate(circuit);
    const Eigen::Index dim = Eigen::Index{1} << circuit.qubits;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto &block : circuit.blocks) {
        for (const auto &op : block) {
            Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(dim, dim);
            for (Eigen::Index k = 0; k < dim; ++k) {
                const auto bit = [&](int q) { return (k >> q) & 1; };
                switch (op.gate) {
                    case LogicalGate::RZ:
                        g(k, k) = bit(op.qubits[0]) ? std::polar(1.0, op.theta) : cplx(1.0);
                        break;
                    case LogicalGate::CPHASE:
                        g(k, k) = bit(op.qubits[0]) && bit(op.qubits[1]) ? std::polar(1.0, op.theta) : cplx(1.0);
                        break;
                    case LogicalGate::RX:
                        g(k, k) = std::cos(op.theta);
                        g(k ^ (Eigen::Index{1} << op.qubits[0]), k) = cplx(0.0, std::sin(op.theta));
                        break;
                }
            }
            u = g * u;
        }
    }
    return u;
}

void validate(const LayoutParams &params) {
    if (!(params.epsilon < params.epsilon1 && params.epsilon1 < params.epsilon2)) {
        throw ParameterError("layout exponents must satisfy epsilon < epsilon1 < epsilon2");
    }
    if (params.epsilon <= -1.0 / 3.0) throw ParameterError("packet width exponent must exceed -1/3");
    if (!(params.start_margin >= 0) || !std::isfinite(params.start_margin)) {
        throw ParameterError("start margin must be non-negative");
    }
    if (params.inter_block_gap && *params.inter_block_gap < 0) {
        throw ParameterError("inter-block gap must be non-negative");
    }
}

long long LayoutGeometry::span(int blocks) const {
    return run_up + static_cast<long long>(blocks) * (gate_length + gap);
}

LayoutGeometry layout_geometry(int sites, const LayoutParams &params) {
    validate(params);
    LayoutGeometry g;
    g.delta_x = std::pow(static_cast<double>(sites), 1.0 / 3.0 + params.epsilon);
    g.truncation_distance = round_power(sites, 1.0 / 3.0 + params.epsilon1);
    g.gate_length = round_power(sites, 1.0 / 3.0 + params.epsilon2);
    g.band = 3 * g.truncation_distance;
    g.gap = params.inter_block_gap.value_or(g.truncation_distance);
    g.run_up = static_cast<int>(std::lround(params.start_margin * g.truncation_distance));
    return g;
}

std::vector<GateRegion> CompiledLayout::regions() const {
    std::vector<GateRegion> all;
    for (const auto &b : blocks) all.insert(all.end(), b.begin(), b.end());
    return all;
}

double CompiledLayout::center_at(double t) const {
    const double x = packet.x0 + kPropagationDirection * kGroupSpeed * t;
    const double r = std::fmod(x, static_cast<double>(sites));
    return r < 0 ? r + sites : r;
}

double calibrate_phi(double theta, int length) {
    if (length < 1) throw ParameterError("gate length must be at least 1");
    return -2.0 * theta / length;
}

CompiledLayout compile(const LogicalCircuit &circuit, int sites, const LayoutParams &params) {
    validate(circuit);
    RingSystem sys(sites, circuit.qubits);
    const auto geom = layout_geometry(sites, params);
    const int g = circuit.num_blocks();
    if (!fits(geom, sites, g)) {
        int candidate = 8;
        for (; candidate < (1 << 28); candidate += 4) {
            if (fits(layout_geometry(candidate, params), candidate, g)) break;
        }
        throw CapacityError("a " + std::to_string(g) + "-block layout does not fit on " + std::to_string(sites) +
                                " sites; the smallest ring that fits has " + std::to_string(candidate) + " sites",
                            candidate);
    }

    CompiledLayout out;
    out.sites = sites;
    out.qubits = circuit.qubits;
    out.params = params;
    out.geometry = geom;
    const double x0 = sites - 1;
    out.packet = PacketSpec::from_delta_x(sites, x0, geom.delta_x);
    const int d = geom.truncation_distance;
    const int len = geom.gate_length;
    for (int b = 0; b < g; ++b) {
        const long long entry = geom.run_up + static_cast<long long>(b) * (len + geom.gap);
        // Travel distances [entry, entry + L) map to sites x0 - entry - L + 1 ... x0 - entry.
        const int start = wrap_site(static_cast<long long>(x0) + kPropagationDirection * (entry + len - 1), sites);
        std::vector<GateRegion> regions;
        for (const auto &op : circuit.blocks[b]) {
            GateRegion r;
            r.kind = ring_kind(op.gate);
            r.qubits = op.qubits;
            r.start = start;
            r.length = len;
            r.phi = calibrate_phi(op.theta, len);
            r.band = op.gate == LogicalGate::CPHASE ? geom.band : 1;
            validate(r, sys);
            regions.push_back(std::move(r));
        }
        out.blocks.push_back(std::move(regions));
        out.block_entry.push_back(static_cast<double>(entry));
        out.block_times.push_back({d / kGroupSpeed, (len - 2 * d) / kGroupSpeed, d / kGroupSpeed});
    }
    out.total_time = static_cast<double>(geom.span(g)) / kGroupSpeed;
    return out;
}

int recommended_N(int qubits, int blocks, double delta) {
    if (qubits < 1 || blocks < 1) throw ParameterError("qubit and block counts must be at least 1");
    if (!(delta > 0) || !std::isfinite(delta)) throw ParameterError("delta must be positive");
    const double target = std::pow(static_cast<double>(qubits) * blocks, 3.0 + delta);
    constexpr double kLimit = 1 << 30;
    if (!(target <= kLimit)) {
        throw CapacityError("recommended ring size exceeds 2^30 sites", 0);
    }
    const long long n = static_cast<long long>(std::ceil(target - 1e-9));
    return static_cast<int>((n + 3) / 4 * 4);
}

nlohmann::json to_json(const CompiledLayout &layout) {
    using nlohmann::json;
    json doc;
    doc["sites"] = layout.sites;
    doc["qubits"] = layout.qubits;
    doc["epsilon"] = {layout.params.epsilon, layout.params.epsilon1, layout.params.epsilon2};
    doc["delta_x"] = layout.geometry.delta_x;
    doc["truncation_distance"] = layout.geometry.truncation_distance;
    doc["gate_length"] = layout.geometry.gate_length;
    doc["band"] = layout.geometry.band;
    doc["gap"] = layout.geometry.gap;
    doc["run_up"] = layout.geometry.run_up;
    doc["x0"] = layout.packet.x0;
    doc["total_time"] = layout.total_time;
    doc["blocks"] = json::array();
    for (std::size_t b = 0; b < layout.blocks.size(); ++b) {
        json block;
        block["entry"] = layout.block_entry[b];
        block["times"] = {{"transient_in", layout.block_times[b].transient_in},
                          {"interior", layout.block_times[b].interior},
                          {"transient_out", layout.block_times[b].transient_out}};
        block["regions"] = json::array();
        for (const auto &r : layout.blocks[b]) {
            json qs = json::array();
            for (int q : r.qubits) qs.push_back(q + 1);
            block["regions"].push_back({{"kind", to_string(r.kind)},
                                        {"qubits", qs},
                                        {"start", r.start},
                                        {"length", r.length},
                                        {"phi", r.phi},
                                        {"band", r.band}});
        }
        doc["blocks"].push_back(std::move(block));
    }
    return doc;
}

}  // namespace spinring
