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

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "spinring/error.h"
#include "spinring/experiments.h"

namespace {

constexpr int kExitBoundViolated = 1;
constexpr int kExitConfig = 2;

spinring::ExperimentConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw spinring::ConfigError("cannot open config file " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception &e) {
        throw spinring::ConfigError("config file " + path + " is not valid JSON: " + e.what());
    }
    return spinring::config_from_json(doc);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Wave-packet quantum computing on XY spin rings: experiments and bound checks"};
    app.require_subcommand(1);
    app.fallthrough();

    std::vector<int> sites;
    int qubits = 1;
    std::vector<double> eps;
    std::vector<double> phis;
    double tol = 0.0;
    std::uint64_t seed = 0;
    std::string config_path, out_path, circuit_path, layout_path;

    auto *o_n = app.add_option("--n", sites, "Ring sizes, comma separated")->delimiter(',');
    auto *o_m = app.add_option("--m", qubits, "Number of logical qubits");
    auto *o_eps = app.add_option("--eps", eps, "Layout exponents e,e1,e2")->delimiter(',')->expected(3);
    auto *o_phi = app.add_option("--phi", phis, "Gate strengths, comma separated")->delimiter(',');
    auto *o_tol = app.add_option("--tol", tol, "Propagator tolerance");
    auto *o_seed = app.add_option("--seed", seed, "Master random seed");
    app.add_option("--config", config_path, "JSON configuration file; flags override it");
    auto *o_out = app.add_option("--out", out_path, "CSV output path (default: stdout)");
    auto *o_circ = app.add_option("--circuit", circuit_path, "Circuit file for the circuit scenario");
    app.add_option("--layout-out", layout_path, "Write the compiled layout of each circuit run as JSON");

    for (const auto *name : {"dispersion", "gates", "transient", "bounds-suite", "circuit", "all"}) {
        app.add_subcommand(name, std::string("Run the ") + name + " scenario");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        spinring::ExperimentConfig cfg;
        if (!config_path.empty()) cfg = load_config(config_path);
        cfg.scenario = app.get_subcommands().front()->get_name();
        if (o_n->count()) cfg.sites = sites;
        if (o_m->count()) cfg.qubits = qubits;
        if (o_eps->count()) {
            cfg.layout.epsilon = eps[0];
            cfg.layout.epsilon1 = eps[1];
            cfg.layout.epsilon2 = eps[2];
        }
        if (o_phi->count()) cfg.phis = phis;
        if (o_tol->count()) cfg.tol = tol;
        if (o_seed->count()) cfg.seed = seed;
        if (o_out->count()) cfg.out = out_path;
        if (o_circ->count()) cfg.circuit = circuit_path;
        spinring::validate(cfg);

        if (!layout_path.empty()) {
            auto circuit = cfg.circuit.empty() ? spinring::default_circuit() : spinring::load_circuit(cfg.circuit);
            circuit.qubits = std::max(circuit.qubits, cfg.qubits);
            nlohmann::json layouts = nlohmann::json::array();
            for (int n : cfg.sites) layouts.push_back(spinring::to_json(spinring::compile(circuit, n, cfg.layout)));
            std::ofstream(layout_path) << layouts.dump(2) << '\n';
        }

        const auto rows = spinring::run_scenario(cfg);
        if (cfg.out.empty()) {
            spinring::write_csv(rows, std::cout);
        } else {
            std::ofstream out(cfg.out);
            if (!out) throw spinring::ConfigError("cannot write " + cfg.out);
            spinring::write_csv(rows, out);
        }
        int violations = 0;
        for (const auto &r : rows) {
            if (!r.satisfied()) {
                ++violations;
                std::cerr << "bound violated: " << r.scenario << " N=" << r.sites << " measured=" << r.measured_error
                          << " bound=" << *r.bound_value << '\n';
            }
        }
        return violations == 0 ? 0 : kExitBoundViolated;
    } catch (const spinring::CapacityError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const spinring::ConfigError &e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument &e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBoundViolated;
    }
}
