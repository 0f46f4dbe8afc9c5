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

#ifndef SPINRING_LATTICE_H
#define SPINRING_LATTICE_H

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace spinring {

using cplx = std::complex<double>;

/// Geometry of 2m periodic rails with N sites each.
///
/// Qubits are 0-based in code. Rail (a, b) is the a-rail (a in {0, 1}) of
/// qubit b. Only the dual-rail sector is ever represented: exactly one
/// excitation per qubit, so a basis state is a (rail bit, site) pair per
/// qubit and the sector dimension is (2N)^m.
class RingSystem {
   public:
    RingSystem(int sites, int qubits);

    int sites() const { return sites_; }
    int qubits() const { return qubits_; }
    int rails() const { return 2 * qubits_; }
    /// Local dimension of one qubit: 2N (rail bit, site) pairs.
    int local_dim() const { return 2 * sites_; }
    std::size_t dim() const { return dim_; }
    /// Index stride of qubit b in the flattened sector.
    std::size_t stride(int qubit) const { return strides_[qubit]; }
    /// The carrier momentum N/4.
    int p0() const { return sites_ / 4; }

    bool operator==(const RingSystem &other) const {
        return sites_ == other.sites_ && qubits_ == other.qubits_;
    }

   private:
    int sites_;
    int qubits_;
    std::size_t dim_;
    std::vector<std::size_t> strides_;
};

struct RailSite {
    int rail_bit = 0;
    int site = 0;
    bool operator==(const RailSite &) const = default;
};

/// One excitation per qubit: entry b is where qubit b's excitation sits.
struct DualRailConfig {
    std::vector<RailSite> qubits;
    bool operator==(const DualRailConfig &) const = default;
};

/// Little-endian in qubit index; within a qubit, rail-0 sites come before
/// rail-1 sites: index = sum_b (rail_b * N + site_b) * (2N)^b.
std::size_t config_to_index(const DualRailConfig &cfg, const RingSystem &sys);
DualRailConfig index_to_config(std::size_t index, const RingSystem &sys);

/// Same bijection on a bare (sites, qubits) geometry, without the ring-size
/// restrictions of RingSystem.
std::size_t config_to_index(const DualRailConfig &cfg, int sites, int qubits);
DualRailConfig index_to_config(std::size_t index, int sites, int qubits);

/// Complex amplitudes over the dual-rail sector of a ring system.
class StateVector {
   public:
    explicit StateVector(const RingSystem &sys);
    StateVector(const RingSystem &sys, std::vector<cplx> amplitudes);

    static StateVector basis(const RingSystem &sys, std::size_t index);

    const RingSystem &system() const { return sys_; }
    std::size_t size() const { return amps_.size(); }
    std::span<cplx> amplitudes() { return amps_; }
    std::span<const cplx> amplitudes() const { return amps_; }
    cplx &operator[](std::size_t i) { return amps_[i]; }
    const cplx &operator[](std::size_t i) const { return amps_[i]; }

    double norm() const;
    /// Scales to unit norm; a zero vector is left unchanged.
    void normalize();

    StateVector &operator+=(const StateVector &other);
    StateVector &operator-=(const StateVector &other);
    StateVector &operator*=(cplx factor);

   private:
    RingSystem sys_;
    std::vector<cplx> amps_;
};

StateVector operator+(StateVector a, const StateVector &b);
StateVector operator-(StateVector a, const StateVector &b);
StateVector operator*(cplx factor, StateVector a);

/// <u|v>, conjugate-linear in u.
cplx inner_product(const StateVector &u, const StateVector &v);

/// Ring distance between two sites on an N-site ring.
int ring_distance(int a, int b, int sites);

/// Non-negative remainder of a mod n.
inline int wrap_site(long long a, int n) {
    long long r = a % n;
    return static_cast<int>(r < 0 ? r + n : r);
}

}  // namespace spinring

#endif
