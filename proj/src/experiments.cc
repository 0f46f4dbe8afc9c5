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

#include "spinring/experiments.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "spinring/error.h"

namespace spinring {

namespace {

using nlohmann::json;
using std::numbers::pi;

class Stopwatch {
   public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

   private:
    std::chrono::steady_clock::time_point start_;
};

PropagatorConfig propagator(const ExperimentConfig &cfg) {
    PropagatorConfig p;
    p.tol = cfg.tol;
    return p;
}

std::vector<int> sites_or(const ExperimentConfig &cfg, std::vector<int> fallback) {
    return cfg.sites.empty() ? fallback : cfg.sites;
}

std::vector<double> phis_or(const ExperimentConfig &cfg, std::vector<double> fallback) {
    return cfg.phis.empty() ? fallback : cfg.phis;
}

double packet_width(int sites, const LayoutParams &layout) {
    return std::pow(static_cast<double>(sites), 1.0 / 3.0 + layout.epsilon);
}

// Phase of z in (-pi, pi].
double wrapped(double angle) { return std::remainder(angle, 2.0 * pi); }

std::string format_number(double v) {
    std::ostringstream s;
    s << std::setprecision(10) << v;
    return s.str();
}

void fit_and_attach(std::vector<ResultRow> &rows, const std::vector<double> &shapes) {
    if (rows.empty()) return;
    const double c = fit_constant(rows.front().measured_error, shapes.front());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].bound_value = kFitSlack * c * shapes[i];
}

struct Evolved {
    StateVector final;
    double fidelity;
    double error;
};

Evolved run_encoded(const LogicalCircuit &circuit, const CompiledLayout &layout, const SparseHamiltonian &h,
                    const Eigen::VectorXcd &input, const PropagatorConfig &cfg) {
    RingSystem sys(layout.sites, layout.qubits);
    const auto psi0 = encode_logical(input, layout.packet, sys);
    auto psi = evolve(psi0, h, layout.total_time, cfg);
    const double shift = kPropagationDirection * kGroupSpeed * layout.total_time;
    const Eigen::VectorXcd out = logical_unitary(circuit) * input;
    const auto ideal = encode_logical(out, layout.packet.shifted(layout.sites, shift), sys);
    const double fidelity = std::abs(inner_product(ideal, psi)) / (ideal.norm() * psi.norm());
    auto unit = psi;
    unit.normalize();
    return {std::move(psi), std::min(fidelity, 1.0), (unit - ideal).norm()};
}

}  // namespace

void validate(const ExperimentConfig &cfg) {
    static const std::vector<std::string> kScenarios{"dispersion", "gates", "transient", "bounds-suite", "circuit",
                                                     "all"};
    if (std::find(kScenarios.begin(), kScenarios.end(), cfg.scenario) == kScenarios.end()) {
        throw ConfigError("unknown scenario '" + cfg.scenario + "'");
    }
    for (int n : cfg.sites) {
        if (n < 8 || n % 4 != 0) throw ConfigError("ring sizes must be multiples of 4 and at least 8, got " +
                                                   std::to_string(n));
    }
    if (cfg.qubits < 1 || cfg.qubits > 8) throw ConfigError("qubit count must be in [1, 8]");
    if (!(cfg.tol > 0)) throw ConfigError("tol must be positive");
    for (double phi : cfg.phis) {
        if (!std::isfinite(phi)) throw ConfigError("gate strengths must be finite");
    }
    try {
        validate(cfg.layout);
    } catch (const ParameterError &e) {
        throw ConfigError(e.what());
    }
    if (cfg.scenario == "circuit" && cfg.circuit.empty()) throw ConfigError("scenario circuit needs --circuit");
}

ExperimentConfig config_from_json(const json &doc) {
    ExperimentConfig cfg;
    try {
        if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
        static const std::vector<std::string> kKeys{"scenario", "N",       "m",    "delta_p_exponent", "epsilon",
                                                    "phi",      "circuit", "tol",  "seed",             "out"};
        for (const auto &[key, value] : doc.items()) {
            if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
                throw ConfigError("unknown configuration key '" + key + "'");
            }
        }
        cfg.scenario = doc.value("scenario", cfg.scenario);
        if (doc.contains("N")) cfg.sites = doc.at("N").get<std::vector<int>>();
        cfg.qubits = doc.value("m", cfg.qubits);
        cfg.delta_p_exponent = doc.value("delta_p_exponent", cfg.delta_p_exponent);
        if (doc.contains("epsilon")) {
            const auto e = doc.at("epsilon").get<std::vector<double>>();
            if (e.size() != 3) throw ConfigError("epsilon needs three values");
            cfg.layout.epsilon = e[0];
            cfg.layout.epsilon1 = e[1];
            cfg.layout.epsilon2 = e[2];
        }
        if (doc.contains("phi")) cfg.phis = doc.at("phi").get<std::vector<double>>();
        cfg.circuit = doc.value("circuit", cfg.circuit);
        cfg.tol = doc.value("tol", cfg.tol);
        cfg.seed = doc.value("seed", cfg.seed);
        cfg.out = doc.value("out", cfg.out);
    } catch (const json::exception &e) {
        throw ConfigError(std::string("bad configuration value: ") + e.what());
    }
    return cfg;
}

json to_json(const ExperimentConfig &cfg) {
    return {{"scenario", cfg.scenario},
            {"N", cfg.sites},
            {"m", cfg.qubits},
            {"delta_p_exponent", cfg.delta_p_exponent},
            {"epsilon", {cfg.layout.epsilon, cfg.layout.epsilon1, cfg.layout.epsilon2}},
            {"phi", cfg.phis},
            {"circuit", cfg.circuit},
            {"tol", cfg.tol},
            {"seed", cfg.seed},
            {"out", cfg.out}};
}

void write_csv(const std::vector<ResultRow> &rows, std::ostream &out) {
    out << kCsvHeader << '\n';
    for (const auto &r : rows) {
        out << r.scenario << ',' << r.sites << ',' << r.qubits << ',' << r.blocks << ',' << format_number(r.t) << ','
            << format_number(r.delta_p) << ',' << format_number(r.phi) << ',' << format_number(r.measured_error)
            << ',' << (r.bound_value ? format_number(*r.bound_value) : "") << ','
            << (r.fidelity ? format_number(*r.fidelity) : "") << ',' << format_number(r.runtime_seconds) << '\n';
    }
}

StateVector encode_logical(const Eigen::VectorXcd &logical, const PacketSpec &spec, const RingSystem &sys) {
    if (logical.size() != (Eigen::Index{1} << sys.qubits())) {
        throw ShapeError("logical vector must have 2^m entries");
    }
    StateVector s(sys);
    for (Eigen::Index k = 0; k < logical.size(); ++k) {
        if (logical[k] == cplx(0.0)) continue;
        s += logical[k] * tensor_encode(static_cast<std::size_t>(k), spec, sys);
    }
    s.normalize();
    return s;
}

Decoded decode(const StateVector &state, const CompiledLayout &layout, double elapsed) {
    const auto &sys = state.system();
    const auto spec = layout.packet.shifted(layout.sites, kPropagationDirection * kGroupSpeed * elapsed);
    Decoded d;
    const double norm = state.norm();
    double captured = 0.0;
    for (std::size_t k = 0; k < (std::size_t{1} << sys.qubits()); ++k) {
        const auto e = tensor_encode(k, spec, sys);
        const cplx a = norm > 0 ? inner_product(e, state) / (e.norm() * norm) : cplx(0.0);
        captured += std::norm(a);
        d.logical.push_back(a);
    }
    d.leakage = 1.0 - captured;
    return d;
}

CircuitRun simulate_circuit(const LogicalCircuit &circuit, const CompiledLayout &layout,
                            const Eigen::VectorXcd &input, const PropagatorConfig &cfg) {
    RingSystem sys(layout.sites, layout.qubits);
    const auto regions = layout.regions();
    const auto h = assemble(regions, sys);
    auto ev = run_encoded(circuit, layout, h, input, cfg);
    const auto dec = decode(ev.final, layout, layout.total_time);
    return {ev.fidelity, ev.error, dec.leakage, dec.logical};
}

LogicalMap simulate_logical_map(const LogicalCircuit &circuit, const CompiledLayout &layout,
                                const PropagatorConfig &cfg) {
    RingSystem sys(layout.sites, layout.qubits);
    const auto regions = layout.regions();
    const auto h = assemble(regions, sys);
    const Eigen::Index dim = Eigen::Index{1} << layout.qubits;
    LogicalMap out;
    out.map = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        const Eigen::VectorXcd input = Eigen::VectorXcd::Unit(dim, k);
        const auto ev = run_encoded(circuit, layout, h, input, cfg);
        const auto dec = decode(ev.final, layout, layout.total_time);
        for (Eigen::Index j = 0; j < dim; ++j) out.map(j, k) = dec.logical[j];
        out.max_leakage = std::max(out.max_leakage, dec.leakage);
        out.max_error = std::max(out.max_error, ev.error);
    }
    return out;
}

double map_infidelity(const Eigen::MatrixXcd &ideal, const Eigen::MatrixXcd &measured) {
    if (ideal.rows() != measured.rows() || ideal.cols() != measured.cols()) {
        throw ShapeError("logical maps differ in size");
    }
    const double fro = measured.norm();
    if (fro == 0.0) return 1.0;
    const double overlap = std::abs((ideal.adjoint() * measured).trace());
    return 1.0 - overlap / (std::sqrt(static_cast<double>(ideal.rows())) * fro);
}

double layout_bound_shape(const CompiledLayout &layout, const TrotterDegrees &degrees) {
    const auto terms = trotter_terms(layout.qubits, layout.total_time, degrees.n(layout.sites),
                                     degrees.n_prime(layout.sites), layout.packet.delta_p, layout.sites,
                                     layout.geometry.truncation_distance, layout.packet.delta_x);
    return terms.far + terms.dispersion + terms.inner + terms.outer;
}

std::vector<ResultRow> run_dispersion_scaling(const ExperimentConfig &cfg) {
    if (cfg.qubits != 1) throw ConfigError("the dispersion scenario runs on a single ring (m = 1)");
    const auto sites = sites_or(cfg, {32, 64, 128, 256});
    const auto prop = propagator(cfg);
    std::vector<ResultRow> control, half, full;
    std::vector<double> half_shape, full_shape;
    for (int n : sites) {
        RingSystem sys(n, 1);
        const auto h = build_ring(sys);
        const double dp = std::pow(static_cast<double>(n), cfg.delta_p_exponent);
        const auto spec = PacketSpec::from_delta_p(n, n / 2.0, dp);
        const auto psi = tensor_encode("0", spec, sys);
        if (control.empty()) {
            Stopwatch sw;
            const double err = (evolve(psi, h, 0.0, prop) - psi).norm();
            control.push_back({"dispersion_control", n, 1, 0, 0.0, dp, 0.0, err, cfg.tol, std::nullopt, sw.seconds()});
        }
        for (const double frac : {0.25, 0.5}) {
            Stopwatch sw;
            const double t = frac * n;
            const auto moved = evolve(psi, h, t, prop);
            const double err = (moved - ideal_translate(psi, kPropagationDirection * kGroupSpeed * t)).norm();
            ResultRow row{frac < 0.4 ? "dispersion_half" : "dispersion_full",
                          n, 1, 0, t, dp, 0.0, err, std::nullopt, std::nullopt, sw.seconds()};
            (frac < 0.4 ? half : full).push_back(row);
            (frac < 0.4 ? half_shape : full_shape).push_back(dispersion_bound(t, dp, n, 1, 1.0));
        }
    }
    // One constant for the whole series, fitted on the smallest full revolution.
    const double c = fit_constant(full.front().measured_error, full_shape.front());
    for (std::size_t i = 0; i < full.size(); ++i) {
        full[i].bound_value = kFitSlack * c * full_shape[i];
        half[i].bound_value = kFitSlack * c * half_shape[i];
    }
    std::vector<ResultRow> rows = control;
    rows.insert(rows.end(), half.begin(), half.end());
    rows.insert(rows.end(), full.begin(), full.end());
    return rows;
}

std::vector<ResultRow> run_gate_phase(const ExperimentConfig &cfg) {
    const auto prop = propagator(cfg);
    std::vector<ResultRow> rows;
    const auto ext_sites = sites_or(cfg, {64});
    const auto phis = phis_or(cfg, {0.0, 0.01});
    for (int n : ext_sites) {
        const auto spec = PacketSpec::from_delta_x(n, n / 2.0, packet_width(n, cfg.layout));
        for (double phi : phis) {
            // Phi t = pi/3 when phi is nonzero.
            const double t = phi != 0.0 ? pi / (3.0 * std::abs(phi)) : 50.0;
            {
                Stopwatch sw;
                RingSystem sys(n, 1);
                const auto ring = build_ring(sys);
                const auto h = ring + build_gate({GateKind::Z, {0}, 0, n, phi, 1}, sys, true);
                const auto e0 = tensor_encode("0", spec, sys);
                const auto e1 = tensor_encode("1", spec, sys);
                const auto out = evolve((1.0 / std::sqrt(2.0)) * (e0 + e1), h, t, prop);
                const cplx r0 = inner_product(evolve(e0, ring, t, prop), out);
                const cplx r1 = inner_product(evolve(e1, ring, t, prop), out);
                const double err = std::abs(wrapped(std::arg(r1 / r0) + phi * t));
                rows.push_back({"gate_Z", n, 1, 1, t, spec.delta_p, phi, err, kPhaseTolerance, std::nullopt,
                                sw.seconds()});
            }
            {
                Stopwatch sw;
                RingSystem sys(n, 1);
                const auto ring = build_ring(sys);
                const auto h = ring + build_gate({GateKind::X, {0}, 0, n, phi, 1}, sys, true);
                const auto e0 = tensor_encode("0", spec, sys);
                const auto e1 = tensor_encode("1", spec, sys);
                double err = 0.0;
                for (int sign : {1, -1}) {
                    const auto in = (1.0 / std::sqrt(2.0)) * (e0 + cplx(sign) * e1);
                    const cplx r = inner_product(evolve(in, ring, t, prop), evolve(in, h, t, prop));
                    err = std::max(err, std::abs(wrapped(std::arg(r) + sign * phi * t)));
                }
                rows.push_back({"gate_X", n, 1, 1, t, spec.delta_p, phi, err, kPhaseTolerance, std::nullopt,
                                sw.seconds()});
            }
            {
                Stopwatch sw;
                RingSystem sys(n, 2);
                const auto ring = build_ring(sys);
                const auto h = ring + build_gate({GateKind::CPHASE, {0, 1}, 0, n, phi, n}, sys, true);
                StateVector in(sys);
                std::vector<StateVector> basis;
                for (std::size_t k = 0; k < 4; ++k) {
                    basis.push_back(tensor_encode(k, spec, sys));
                    in += 0.5 * basis.back();
                }
                const auto out = evolve(in, h, t, prop);
                std::vector<double> phases;
                for (const auto &b : basis) phases.push_back(std::arg(inner_product(evolve(b, ring, t, prop), out)));
                double err = std::abs(wrapped(phases[3] + phi * t));
                for (int k = 0; k < 3; ++k) err = std::max(err, std::abs(wrapped(phases[k])));
                rows.push_back({"gate_CPHASE", n, 2, 1, t, spec.delta_p, phi, err, kPhaseTolerance, std::nullopt,
                                sw.seconds()});
            }
        }
    }

    // Localized Z block: end-to-end error against the fitted bound shape.
    const auto block_sites = cfg.sites.empty() ? std::vector<int>{128, 256, 512} : cfg.sites;
    LogicalCircuit rz{1, {{LogicalOp{LogicalGate::RZ, pi / 4, {0}}}}};
    std::vector<ResultRow> block_rows;
    std::vector<double> shapes;
    for (int n : block_sites) {
        Stopwatch sw;
        const auto layout = compile(rz, n, cfg.layout);
        Eigen::VectorXcd in(2);
        in << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
        const auto run = simulate_circuit(rz, layout, in, prop);
        block_rows.push_back({"gate_block_Z", n, 1, 1, layout.total_time, layout.packet.delta_p,
                              layout.blocks[0][0].phi, run.error, std::nullopt, run.fidelity, sw.seconds()});
        shapes.push_back(layout_bound_shape(layout));
    }
    fit_and_attach(block_rows, shapes);
    rows.insert(rows.end(), block_rows.begin(), block_rows.end());
    return rows;
}

std::vector<ResultRow> run_transient(const ExperimentConfig &cfg) {
    const auto prop = propagator(cfg);
    std::vector<double> phis = phis_or(cfg, {0.005, 0.01, 0.02});
    std::sort(phis.begin(), phis.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
    phis.erase(std::remove(phis.begin(), phis.end(), 0.0), phis.end());
    const double t = 8.0;
    std::vector<ResultRow> rows;
    for (int n : sites_or(cfg, {64})) {
        RingSystem sys(n, 1);
        const auto ring = build_ring(sys);
        const int x0 = n / 2;
        const int length = std::min(static_cast<int>(4 * t), n / 2);
        // The packet starts on the gate's entry edge and moves into it.
        const int start = wrap_site(x0 - length + 1, n);
        const auto spec = PacketSpec::from_delta_x(n, x0, packet_width(n, cfg.layout));
        const auto psi = tensor_encode("1", spec, sys);
        const auto target = ideal_translate(psi, kPropagationDirection * kGroupSpeed * t);
        const double disp_shape = dispersion_bound(t, spec.delta_p, n, 1, 1.0);

        auto measure = [&](double phi) {
            const auto h = ring + build_gate({GateKind::Z, {0}, start, length, phi, 1}, sys);
            return (evolve(psi, h, t, prop) - target).norm();
        };
        Stopwatch sw0;
        const double free_err = measure(0.0);
        const double c2 = fit_constant(free_err, disp_shape);
        rows.push_back({"transient", n, 1, 1, t, spec.delta_p, 0.0, free_err,
                        kFitSlack * transient_bound(1, t, 0.0, spec.delta_p, n, 0.0, c2), std::nullopt,
                        sw0.seconds()});
        double c1 = 0.0;
        for (std::size_t i = 0; i < phis.size(); ++i) {
            Stopwatch sw;
            const double err = measure(phis[i]);
            if (i == 0) c1 = std::max(0.0, err - c2 * disp_shape) / (t * std::abs(phis[i]));
            rows.push_back({"transient", n, 1, 1, t, spec.delta_p, phis[i], err,
                            kFitSlack * transient_bound(1, t, phis[i], spec.delta_p, n, c1, c2), std::nullopt,
                            sw.seconds()});
        }
    }
    return rows;
}

std::vector<ResultRow> run_bounds_suite(const ExperimentConfig &cfg) {
    std::vector<ResultRow> rows;
    const int trials = 100;
    auto add = [&](const std::string &name, int n, int m, double t, const BoundReport &r, double secs) {
        rows.push_back({name, n, m, 0, t, 0.0, 0.0, r.measured_value, r.bound_value, std::nullopt, secs});
    };
    {
        Stopwatch sw;
        const auto reports = matrix_exp_sensitivity_check(16, trials, cfg.seed);
        const double per = sw.seconds() / trials;
        for (const auto &r : reports) add("bounds_matrix_exp", 0, 16, r.parameters.at("t"), r, per);
    }
    {
        Stopwatch sw;
        const auto reports = hybrid_argument_trials(8, 5, trials, cfg.seed);
        const double per = sw.seconds() / trials;
        for (const auto &r : reports) add("bounds_hybrid", 0, 8, 0.0, r, per);
    }
    for (int n : sites_or(cfg, {64, 256})) {
        Stopwatch sw;
        const auto reports = sum_bound_trials(n, trials, cfg.seed);
        const double per = sw.seconds() / trials;
        for (const auto &r : reports) add("bounds_sum", n, 1, 0.0, r, per);
    }
    const double phi = cfg.phis.empty() ? 0.01 : cfg.phis.front();
    for (int n : std::vector<int>{128, 256, 512}) {
        Stopwatch sw;
        RingSystem sys(n, 1);
        const double dx = std::cbrt(static_cast<double>(n));
        const int d = static_cast<int>(std::lround(3.0 * dx));
        const auto spec = PacketSpec::from_delta_x(n, n / 2.0, dx);
        const auto psi = tensor_encode("1", spec, sys);
        const double res = far_gate_residual(psi, far_gate_hamiltonian(sys, GateKind::Z, n / 2.0, d, n / 4, phi));
        const double envelope = 10.0 * std::abs(phi) * n * std::exp(-d * d / (2.0 * dx * dx));
        rows.push_back({"bounds_far_gate", n, 1, 0, 0.0, spec.delta_p, phi, res, envelope, std::nullopt,
                        sw.seconds()});
    }
    return rows;
}

LogicalCircuit default_circuit() {
    return {1, {{LogicalOp{LogicalGate::RZ, pi / 4, {0}}}, {LogicalOp{LogicalGate::RX, pi / 3, {0}}}}};
}

std::vector<ResultRow> run_circuit(const ExperimentConfig &cfg) {
    auto circuit = cfg.circuit.empty() ? default_circuit() : load_circuit(cfg.circuit);
    // --m can widen a circuit with idle qubits but never narrow it.
    circuit.qubits = std::max(circuit.qubits, cfg.qubits);
    std::vector<int> sites = cfg.sites;
    if (sites.empty()) {
        int n = std::max(8, recommended_N(circuit.qubits, std::max(1, circuit.num_blocks()), 0.1));
        try {
            compile(circuit, n, cfg.layout);
        } catch (const CapacityError &e) {
            n = static_cast<int>(e.minimal_n);
        }
        sites.push_back(n);
    }
    const auto prop = propagator(cfg);
    const Eigen::Index dim = Eigen::Index{1} << circuit.qubits;
    const Eigen::VectorXcd zero = Eigen::VectorXcd::Unit(dim, 0);
    std::vector<ResultRow> main, leak;
    std::vector<double> shapes;
    for (int n : sites) {
        Stopwatch sw;
        const auto layout = compile(circuit, n, cfg.layout);
        const auto run = simulate_circuit(circuit, layout, zero, prop);
        double phi = 0.0;
        for (const auto &r : layout.regions()) phi = std::max(phi, std::abs(r.phi));
        const double secs = sw.seconds();
        main.push_back({"circuit", n, circuit.qubits, circuit.num_blocks(), layout.total_time, layout.packet.delta_p,
                        phi, run.error, std::nullopt, run.fidelity, secs});
        leak.push_back({"circuit_leakage", n, circuit.qubits, circuit.num_blocks(), layout.total_time,
                        layout.packet.delta_p, phi, std::max(0.0, run.leakage), std::nullopt, std::nullopt, secs});
        shapes.push_back(layout_bound_shape(layout));
    }
    fit_and_attach(main, shapes);
    main.insert(main.end(), leak.begin(), leak.end());
    return main;
}

std::vector<ResultRow> run_scenario(const ExperimentConfig &cfg) {
    validate(cfg);
    const auto &s = cfg.scenario;
    if (s == "dispersion") return run_dispersion_scaling(cfg);
    if (s == "gates") return run_gate_phase(cfg);
    if (s == "transient") return run_transient(cfg);
    if (s == "bounds-suite") return run_bounds_suite(cfg);
    if (s == "circuit") return run_circuit(cfg);
    std::vector<ResultRow> rows;
    auto single = cfg;
    single.qubits = 1;
    for (auto part : {run_dispersion_scaling(single), run_gate_phase(cfg), run_transient(cfg), run_bounds_suite(cfg),
                      run_circuit(cfg)}) {
        rows.insert(rows.end(), part.begin(), part.end());
    }
    return rows;
}

}  // namespace spinring
