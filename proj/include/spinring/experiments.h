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

#ifndef SPINRING_EXPERIMENTS_H
#define SPINRING_EXPERIMENTS_H

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinring/bounds.h"
#include "spinring/compiler.h"
#include "spinring/propagate.h"

namespace spinring {

/// Slack applied to every bound whose constants are fitted on the smallest
/// instance of a series.
inline constexpr double kFitSlack = 3.0;

/// Tolerance for exact phase checks on extended gates.
inline constexpr double kPhaseTolerance = 1e-9;

struct ExperimentConfig {
    std::string scenario = "all";
    /// Ring sizes; each scenario has its own default when empty.
    std::vector<int> sites;
    int qubits = 1;
    /// Dispersion runs use delta_p = N^{delta_p_exponent}.
    double delta_p_exponent = 2.0 / 3.0 - 0.1;
    LayoutParams layout;
    /// Gate strengths; each scenario has its own default when empty.
    std::vector<double> phis;
    std::string circuit;
    double tol = 1e-10;
    std::uint64_t seed = 42;
    std::string out;
};

/// Throws ConfigError on invalid contents.
void validate(const ExperimentConfig &cfg);

/// Keys: scenario, N, m, delta_p_exponent, epsilon (three numbers), phi,
/// circuit, tol, seed, out. Missing keys keep their defaults.
ExperimentConfig config_from_json(const nlohmann::json &doc);
nlohmann::json to_json(const ExperimentConfig &cfg);

struct ResultRow {
    std::string scenario;
    int sites = 0;
    int qubits = 0;
    int blocks = 0;
    double t = 0.0;
    double delta_p = 0.0;
    double phi = 0.0;
    double measured_error = 0.0;
    /// Empty in the CSV when unset.
    std::optional<double> bound_value;
    std::optional<double> fidelity;
    double runtime_seconds = 0.0;

    /// A row with a bound passes when the measurement does not exceed it.
    bool satisfied() const { return !bound_value || measured_error <= *bound_value; }
};

inline constexpr const char *kCsvHeader =
    "scenario,N,m,g,t,delta_p,phi,measured_error,bound_value,fidelity,runtime_seconds";

void write_csv(const std::vector<ResultRow> &rows, std::ostream &out);

/// Projection of a state onto the encoded basis with packets at
/// x0 + kPropagationDirection * 2 * elapsed.
struct Decoded {
    std::vector<cplx> logical;
    double leakage = 0.0;
};

Decoded decode(const StateVector &state, const CompiledLayout &layout, double elapsed);

/// Encoded packet state for logical amplitudes (index bit b is qubit b),
/// normalized.
StateVector encode_logical(const Eigen::VectorXcd &logical, const PacketSpec &spec, const RingSystem &sys);

struct CircuitRun {
    double fidelity = 0.0;
    /// ||psi_sim - psi_ideal|| for the normalized states.
    double error = 0.0;
    double leakage = 0.0;
    std::vector<cplx> logical;
};

/// Evolves the encoded input through the compiled layout for its total time
/// and compares with the ideal encoded output.
CircuitRun simulate_circuit(const LogicalCircuit &circuit, const CompiledLayout &layout,
                            const Eigen::VectorXcd &input, const PropagatorConfig &cfg = {});

/// The decoded logical map (column k is the decoded output for input k) and
/// the worst leakage over inputs.
struct LogicalMap {
    Eigen::MatrixXcd map;
    double max_leakage = 0.0;
    double max_error = 0.0;
};

LogicalMap simulate_logical_map(const LogicalCircuit &circuit, const CompiledLayout &layout,
                                const PropagatorConfig &cfg = {});

/// 1 - |Tr(U^dagger M)| / (sqrt(dim) ||M||_F); zero iff M is proportional to U.
double map_infidelity(const Eigen::MatrixXcd &ideal, const Eigen::MatrixXcd &measured);

/// Unit-weight localized-gate bound shape for a compiled layout.
double layout_bound_shape(const CompiledLayout &layout, const TrotterDegrees &degrees = {});

std::vector<ResultRow> run_dispersion_scaling(const ExperimentConfig &cfg);
std::vector<ResultRow> run_gate_phase(const ExperimentConfig &cfg);
std::vector<ResultRow> run_transient(const ExperimentConfig &cfg);
std::vector<ResultRow> run_bounds_suite(const ExperimentConfig &cfg);
std::vector<ResultRow> run_circuit(const ExperimentConfig &cfg);

/// Dispatches on cfg.scenario ("all" runs every scenario in a fixed order).
std::vector<ResultRow> run_scenario(const ExperimentConfig &cfg);

/// The circuit used when `all` runs without a circuit file.
LogicalCircuit default_circuit();

}  // namespace spinring

#endif
