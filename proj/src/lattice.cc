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

#include "spinring/lattice.h"

#include <cmath>
#include <limits>
#include <string>

#include "spinring/error.h"
#include "spinring/kernels.h"

namespace spinring {

RingSystem::RingSystem(int sites, int qubits) : sites_(sites), qubits_(qubits), dim_(1) {
    if (sites < 8 || sites % 4 != 0) {
        throw ParameterError("ring size must be a multiple of 4 and at least 8, got " +
                             std::to_string(sites));
    }
    if (qubits < 1 || qubits > 8) {
        throw ParameterError("qubit count must be in [1, 8], got " + std::to_string(qubits));
    }
    const auto local = static_cast<std::size_t>(2 * sites);
    for (int b = 0; b < qubits; ++b) {
        strides_.push_back(dim_);
        if (dim_ > std::numeric_limits<std::size_t>::max() / local) {
            throw ParameterError("sector dimension overflows");
        }
        dim_ *= local;
    }
}

std::size_t config_to_index(const DualRailConfig &cfg, int sites, int qubits) {
    if (static_cast<int>(cfg.qubits.size()) != qubits) {
        throw ShapeError("config has " + std::to_string(cfg.qubits.size()) + " qubits, system has " +
                         std::to_string(qubits));
    }
    const auto local = static_cast<std::size_t>(2 * sites);
    std::size_t index = 0;
    std::size_t stride = 1;
    for (int b = 0; b < qubits; ++b) {
        const auto &q = cfg.qubits[b];
        if (q.site < 0 || q.site >= sites) {
            throw RangeError("site " + std::to_string(q.site) + " outside [0, " +
                             std::to_string(sites - 1) + "]");
        }
        if (q.rail_bit != 0 && q.rail_bit != 1) {
            throw RangeError("rail bit must be 0 or 1, got " + std::to_string(q.rail_bit));
        }
        index += static_cast<std::size_t>(q.rail_bit * sites + q.site) * stride;
        stride *= local;
    }
    return index;
}

DualRailConfig index_to_config(std::size_t index, int sites, int qubits) {
    const auto local = static_cast<std::size_t>(2 * sites);
    std::size_t dim = 1;
    for (int b = 0; b < qubits; ++b) dim *= local;
    if (index >= dim) {
        throw RangeError("index " + std::to_string(index) + " outside sector of dimension " +
                         std::to_string(dim));
    }
    DualRailConfig cfg;
    cfg.qubits.reserve(qubits);
    for (int b = 0; b < qubits; ++b) {
        const auto l = static_cast<int>(index % local);
        index /= local;
        cfg.qubits.push_back({l / sites, l % sites});
    }
    return cfg;
}

std::size_t config_to_index(const DualRailConfig &cfg, const RingSystem &sys) {
    return config_to_index(cfg, sys.sites(), sys.qubits());
}

DualRailConfig index_to_config(std::size_t index, const RingSystem &sys) {
    return index_to_config(index, sys.sites(), sys.qubits());
}

StateVector::StateVector(const RingSystem &sys) : sys_(sys), amps_(sys.dim()) {}

StateVector::StateVector(const RingSystem &sys, std::vector<cplx> amplitudes)
    : sys_(sys), amps_(std::move(amplitudes)) {
    if (amps_.size() != sys.dim()) {
        throw ShapeError("amplitude count " + std::to_string(amps_.size()) +
                         " does not match sector dimension " + std::to_string(sys.dim()));
    }
}

StateVector StateVector::basis(const RingSystem &sys, std::size_t index) {
    if (index >= sys.dim()) throw RangeError("basis index out of range");
    StateVector v(sys);
    v.amps_[index] = 1.0;
    return v;
}

double StateVector::norm() const { return std::sqrt(kernels::norm_sq(amps_)); }

void StateVector::normalize() {
    const double n = norm();
    if (n > 0.0) *this *= 1.0 / n;
}

StateVector &StateVector::operator+=(const StateVector &other) {
    if (!(sys_ == other.sys_)) throw ShapeError("state vectors live on different ring systems");
    kernels::axpy(1.0, other.amps_, amps_);
    return *this;
}

StateVector &StateVector::operator-=(const StateVector &other) {
    if (!(sys_ == other.sys_)) throw ShapeError("state vectors live on different ring systems");
    kernels::axpy(-1.0, other.amps_, amps_);
    return *this;
}

StateVector &StateVector::operator*=(cplx factor) {
    for (auto &a : amps_) a *= factor;
    return *this;
}

StateVector operator+(StateVector a, const StateVector &b) { return a += b; }
StateVector operator-(StateVector a, const StateVector &b) { return a -= b; }
StateVector operator*(cplx factor, StateVector a) { return a *= factor; }

cplx inner_product(const StateVector &u, const StateVector &v) {
    if (!(u.system() == v.system())) throw ShapeError("inner product across different ring systems");
    return kernels::dot(u.amplitudes(), v.amplitudes());
}

int ring_distance(int a, int b, int sites) {
    const int d = wrap_site(static_cast<long long>(a) - b, sites);
    return d < sites - d ? d : sites - d;
}

}  // namespace spinring
