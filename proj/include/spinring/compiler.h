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

#ifndef SPINRING_COMPILER_H
#define SPINRING_COMPILER_H

#include <Eigen/Dense>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinring/hamiltonian.h"
#include "spinring/packets.h"
#include "spinring/propagate.h"

namespace spinring {

/// Logical gates, with the conventions realized by the ring blocks:
/// RZ(theta) = diag(1, e^{i theta}), RX(theta) = e^{i theta X},
/// CPHASE(theta) = diag(1, 1, 1, e^{i theta}).
enum class LogicalGate { RZ, RX, CPHASE };

std::string to_string(LogicalGate gate);
LogicalGate logical_gate_from_string(const std::string &name);

/// One logical operation. Qubits are 0-based.
struct LogicalOp {
    LogicalGate gate = LogicalGate::RZ;
    double theta = 0.0;
    std::vector<int> qubits;
    bool operator==(const LogicalOp &) const = default;
};

/// Ordered gate blocks; ops inside one block act on disjoint qubits and run
/// simultaneously.
struct LogicalCircuit {
    int qubits = 1;
    std::vector<std::vector<LogicalOp>> blocks;
    int num_blocks() const { return static_cast<int>(blocks.size()); }
    bool operator==(const LogicalCircuit &) const = default;
};

void validate(const LogicalCircuit &circuit);

/// Parses the line-oriented circuit format: one block per line, ops
/// separated by ';', qubits written 1-based as q1, q2, ...
///
///     RZ 0.785398 q1; CPHASE 3.141593 q2 q3
///
/// Angles are decimal numbers or multiples of pi such as "pi/4", "-pi",
/// "3*pi/4". Blank lines and text after '#' are ignored. The qubit count is
/// `qubits` if positive, otherwise the largest qubit mentioned.
LogicalCircuit parse_circuit(std::istream &in, int qubits = 0);
LogicalCircuit load_circuit(const std::filesystem::path &path, int qubits = 0);
std::string format_circuit(const LogicalCircuit &circuit);

/// The 2^m x 2^m logical unitary; bit b of a basis index is qubit b.
Eigen::MatrixXcd logical_unitary(const LogicalCircuit &circuit);

/// Exponents and spacing of the ring layout.
///
/// Packet width delta_x = N^{1/3 + epsilon}, truncation distance
/// d = round(N^{1/3 + epsilon1}), gate length L = round(N^{1/3 + epsilon2}).
struct LayoutParams {
    double epsilon = 0.0;
    double epsilon1 = 0.05;
    double epsilon2 = 1.0 / 3.0;
    /// Run-up before the first block, in units of d.
    double start_margin = 3.0;
    /// Sites between consecutive blocks; d when unset.
    std::optional<int> inter_block_gap;
};

void validate(const LayoutParams &params);

/// Lengths derived from LayoutParams on an N-site ring.
struct LayoutGeometry {
    double delta_x = 0.0;
    int truncation_distance = 0;
    int gate_length = 0;
    int band = 0;
    int gap = 0;
    int run_up = 0;
    /// run_up + g * (gate_length + gap).
    long long span(int blocks) const;
};

LayoutGeometry layout_geometry(int sites, const LayoutParams &params);

/// Time spent by a packet center in one block: the entry transient (first
/// d sites), the interior (L - 2d) and the exit transient (last d sites).
struct BlockTimes {
    double transient_in = 0.0;
    double interior = 0.0;
    double transient_out = 0.0;
    double total() const { return transient_in + interior + transient_out; }
};

struct CompiledLayout {
    int sites = 0;
    int qubits = 0;
    LayoutParams params;
    LayoutGeometry geometry;
    /// Packet used on every rail; its center is where all packets start.
    PacketSpec packet;
    /// Gate regions grouped by block.
    std::vector<std::vector<GateRegion>> blocks;
    /// Distance the packets travel before entering each block.
    std::vector<double> block_entry;
    std::vector<BlockTimes> block_times;
    /// Time for the packets to clear the last block and its trailing gap.
    double total_time = 0.0;

    std::vector<GateRegion> regions() const;
    /// Time at which the packet centers enter block b.
    double entry_time(int block) const { return block_entry[block] / kGroupSpeed; }
    /// Packet center after time t.
    double center_at(double t) const;
};

/// Gate strength for a rotation by theta over a gate of the given length:
/// a packet crossing it at speed 2 spends L/2 under e^{-i phi t}, so
/// phi = -2 theta / L.
double calibrate_phi(double theta, int length);

/// Lays the circuit out along the rings: block b occupies travel distances
/// [entry_b, entry_b + L) ahead of the packets, which move toward
/// decreasing site index. Throws CapacityError naming the smallest ring
/// that fits.
CompiledLayout compile(const LogicalCircuit &circuit, int sites, const LayoutParams &params = {});

/// Smallest multiple of 4 that is at least (m g)^{3 + delta}.
int recommended_N(int qubits, int blocks, double delta);

/// Layout as a JSON document. Qubits are written 1-based, matching the
/// circuit format.
nlohmann::json to_json(const CompiledLayout &layout);

}  // namespace spinring

#endif
