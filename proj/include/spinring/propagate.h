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

#ifndef SPINRING_PROPAGATE_H
#define SPINRING_PROPAGATE_H

#include <Eigen/Dense>
#include <span>

#include "spinring/hamiltonian.h"
#include "spinring/lattice.h"

namespace spinring {

/// Packets with carrier momentum N/4 move toward decreasing site index:
/// after time t the center sits at x0 + kPropagationDirection * 2t. Checked
/// against the exact evolution in the propagate tests.
inline constexpr int kPropagationDirection = -1;
/// |dE/dk| at the carrier momentum.
inline constexpr double kGroupSpeed = 2.0;

enum class PropagatorMethod { dense_eigen, iterative_polynomial };

struct PropagatorConfig {
    double tol = 1e-10;
    PropagatorMethod method = PropagatorMethod::iterative_polynomial;
    /// Longest time covered by one Chebyshev expansion.
    double max_step = 10.0;
    /// Term budget per substep before giving up.
    int max_terms = 4000;
};

/// e^{-iHt}|state> to within cfg.tol in the 2-norm.
StateVector evolve(const StateVector &state, const SparseHamiltonian &h, double t,
                   const PropagatorConfig &cfg = {});

/// Exact evolution through a cached dense eigendecomposition
/// (dimension <= SparseHamiltonian::kDenseLimit).
class DensePropagator {
   public:
    explicit DensePropagator(const SparseHamiltonian &h);
    StateVector evolve(const StateVector &state, double t) const;
    const Eigen::VectorXd &eigenvalues() const { return values_; }

   private:
    RingSystem sys_;
    Eigen::VectorXd values_;
    Eigen::MatrixXd vectors_;
};

/// Moves every packet center by `shift` sites (any real). Each momentum
/// coefficient is multiplied by exp(-2 pi i (p - p0) shift / N), with p taken
/// in [p0 - N/2, p0 + N/2). A packet built at x0 maps onto the packet built
/// at x0 + shift exactly for integer shifts, and up to the momentum tail
/// outside that window otherwise. Exactly unitary.
StateVector ideal_translate(const StateVector &state, double shift);

/// The ideal action of a gate block over time t: translation by
/// kPropagationDirection * 2t combined with the block's logical phases
/// (Z: e^{-i phi t} on bit 1; X: e^{-i phi t X} on the rail pair;
/// CPHASE: e^{-i phi t} on both bits 1).
StateVector ideal_gate_unitary(const StateVector &state, std::span<const GateRegion> block, double t);

/// Only the logical phase part of ideal_gate_unitary.
StateVector apply_block_phases(const StateVector &state, std::span<const GateRegion> block, double t);

}  // namespace spinring

#endif
