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

#ifndef SPINRING_HAMILTONIAN_H
#define SPINRING_HAMILTONIAN_H

#include <Eigen/Dense>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spinring/kernels.h"
#include "spinring/lattice.h"

namespace spinring {

enum class GateKind { Z, X, CPHASE };

std::string to_string(GateKind kind);
GateKind gate_kind_from_string(const std::string &name);

/// One gate's coupling on a stretch of the rings.
///
/// Sites covered are start, start + 1, ..., start + length - 1 (mod N).
/// Z acts on the 1-rail of qubits[0]; X couples the two rails of qubits[0]
/// site by site; CPHASE couples the 1-rails of qubits[0] and qubits[1] for
/// site pairs inside the interval that are at most `band` apart.
struct GateRegion {
    GateKind kind = GateKind::Z;
    std::vector<int> qubits;
    int start = 0;
    int length = 0;
    double phi = 0.0;
    int band = 1;

    bool covers(int site, int sites) const;
    bool operator==(const GateRegion &) const = default;
};

void validate(const GateRegion &region, const RingSystem &sys);

struct Triplet {
    std::size_t row;
    std::size_t col;
    cplx value;
};

/// Hermitian operator on the dual-rail sector, applied matrix-free.
///
/// Every term is real, so the operator is real symmetric in the
/// configuration basis. Dense and triplet exports exist for small
/// instances only.
class SparseHamiltonian {
   public:
    explicit SparseHamiltonian(const RingSystem &sys);

    const RingSystem &system() const { return sys_; }
    std::size_t dim() const { return sys_.dim(); }
    const kernels::OperatorTables &tables() const { return tables_; }
    kernels::OperatorTables &tables() { return tables_; }

    void apply(std::span<const cplx> x, std::span<cplx> y,
               kernels::Exec exec = kernels::Exec::parallel) const;
    StateVector apply(const StateVector &x) const;

    /// Nonzero entries of one row, diagonal first.
    std::vector<std::pair<std::size_t, double>> row(std::size_t index) const;
    std::vector<Triplet> triplets() const;

    static constexpr std::size_t kDenseLimit = 4096;
    Eigen::MatrixXd dense() const;

    /// Gershgorin interval containing the whole spectrum.
    std::pair<double, double> spectral_bounds() const;

    SparseHamiltonian &operator+=(const SparseHamiltonian &other);
    SparseHamiltonian &operator*=(double factor);

   private:
    RingSystem sys_;
    kernels::OperatorTables tables_;
};

SparseHamiltonian operator+(SparseHamiltonian a, const SparseHamiltonian &b);
SparseHamiltonian operator-(SparseHamiltonian a, const SparseHamiltonian &b);

/// Nearest-neighbour XY hopping with unit amplitude on all 2m rails.
SparseHamiltonian build_ring(const RingSystem &sys);

/// A single gate's coupling. With `extended`, the interval (and band) are
/// replaced by the whole ring.
SparseHamiltonian build_gate(const GateRegion &region, const RingSystem &sys, bool extended = false);

/// Ring plus every region.
SparseHamiltonian assemble(std::span<const GateRegion> regions, const RingSystem &sys);

/// Largest |eigenvalue|: dense below `dense_cutoff`, Lanczos above.
double operator_norm_on_V(const SparseHamiltonian &h, std::size_t dense_cutoff = 1024);

/// Extreme eigenvalues by Lanczos iteration (relative residual `tol`).
std::pair<double, double> lanczos_extremes(const SparseHamiltonian &h, double tol = 1e-7,
                                           int max_iterations = 3000);

/// Writes "row col re im" lines for every nonzero.
void write_triplets(const SparseHamiltonian &h, std::ostream &out);

}  // namespace spinring

#endif
