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

#ifndef SPINRING_KERNELS_H
#define SPINRING_KERNELS_H

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace spinring::kernels {

using cplx = std::complex<double>;

/// Every kernel has a plain serial loop and an OpenMP loop. Both evaluate
/// the same per-element expressions in the same order, so their results are
/// bitwise identical; the serial one is the reference for tests.
enum class Exec { serial, parallel };

/// Reductions sum fixed-size blocks first and then the block partials in
/// index order, independent of the thread count.
inline constexpr std::size_t kReductionBlock = 4096;

cplx dot(std::span<const cplx> a, std::span<const cplx> b, Exec exec = Exec::parallel);
double norm_sq(std::span<const cplx> a, Exec exec = Exec::parallel);
/// y += alpha * x
void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y, Exec exec = Exec::parallel);
/// out = alpha * a + beta * b
void combine(cplx alpha, std::span<const cplx> a, cplx beta, std::span<const cplx> b,
             std::span<cplx> out, Exec exec = Exec::parallel);

/// Coupling of the (1, q1) and (1, q2) rails: values[s1 * N + s2] is added to
/// the diagonal when qubit q1 sits on rail 1 at s1 and q2 on rail 1 at s2.
struct PairTable {
    int q1 = 0;
    int q2 = 1;
    std::vector<double> values;
};

/// Matrix-free description of a real symmetric operator on the dual-rail
/// sector. All couplings preserve one excitation per qubit.
struct OperatorTables {
    int sites = 0;
    int qubits = 0;
    /// Nearest-neighbour amplitude on every rail (1 for the ring, 0 without).
    double hopping = 0.0;
    /// Per qubit, 2N entries indexed by rail * N + site.
    std::vector<std::vector<double>> onsite;
    /// Per qubit, N entries: amplitude between (0, s) and (1, s).
    std::vector<std::vector<double>> rung;
    std::vector<PairTable> pairs;
};

/// y = H x.
void apply(const OperatorTables &op, std::span<const cplx> x, std::span<cplx> y,
           Exec exec = Exec::parallel);

/// Circulant convolution along the site axis of one qubit (both rails):
/// y[.., s, ..] = sum_s' kernel[(s - s') mod N] x[.., s', ..].
/// `stride` is the qubit's index stride in the sector.
void circulant(std::span<const cplx> kernel, int sites, std::size_t stride, std::span<const cplx> x,
               std::span<cplx> y, Exec exec = Exec::parallel);

}  // namespace spinring::kernels

#endif
