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

#ifndef SPINRING_BOUNDS_H
#define SPINRING_BOUNDS_H

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "spinring/hamiltonian.h"
#include "spinring/packets.h"

namespace spinring {

/// One bound evaluated against one measurement.
struct BoundReport {
    std::string name;
    std::map<std::string, double> parameters;
    double bound_value = 0.0;
    double measured_value = 0.0;
    bool satisfied = false;
};

/// C m t dp^3 / N^3.
double dispersion_bound(double t, double delta_p, int sites, int qubits, double c);

/// C1 m t |phi| + C2 m t dp^3 / N^3.
double transient_bound(int qubits, double t, double phi, double delta_p, int sites, double c1, double c2);

/// The four terms of the localized-gate error bound, without constants:
/// far-gate tail t N e^{-d^2 / 2 dx^2}, dispersion m t dp^3 / N^3, inner
/// Trotter m^2 t^2 / (n n'), outer Trotter m^2 t^2 / n'. The far-gate
/// term carries the factor t picked up by summing ||H_far psi|| over the
/// Trotter steps, so every term vanishes at t = 0.
struct TrotterTerms {
    double far = 0.0;
    double dispersion = 0.0;
    double inner = 0.0;
    double outer = 0.0;
};

TrotterTerms trotter_terms(int qubits, double t, double n, double n_prime, double delta_p, int sites, double d,
                           double delta_x);

/// Weighted sum of trotter_terms with weights cs (four entries).
double trotter_error_bound(int qubits, double t, double n, double n_prime, double delta_p, int sites, double d,
                           double delta_x, std::span<const double> cs);

/// Trotter step counts n = N^q1, n' = N^q2.
struct TrotterDegrees {
    double q1 = 2.0;
    double q2 = 2.0;
    double n(int sites) const;
    double n_prime(int sites) const;
};

/// Spectral norm (largest singular value).
double spectral_norm(const Eigen::MatrixXcd &a);

/// e^{A t} for skew-Hermitian A, through the eigendecomposition of iA.
Eigen::MatrixXcd skew_hermitian_exp(const Eigen::MatrixXcd &a, double t);

Eigen::MatrixXcd random_skew_hermitian(int dim, std::mt19937_64 &rng);

/// Haar-distributed unitary from the QR factorization of a Gaussian matrix.
Eigen::MatrixXcd random_unitary(int dim, std::mt19937_64 &rng);

/// Checks ||e^{(A+E)t} - e^{At}|| <= ||E|| t e^{||E|| t} for one instance.
BoundReport matrix_exp_sensitivity(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &e, double t);

/// Random skew-Hermitian A and E with t in (0, 2]; trial k is seeded with
/// seed + k.
std::vector<BoundReport> matrix_exp_sensitivity_check(int dim, int trials, std::uint64_t seed);

/// ||(U_n...U_1 - V_n...V_1) psi|| against sum_j ||(U_j - V_j) U_{j-1}...U_1 psi||.
BoundReport hybrid_argument_check(std::span<const Eigen::MatrixXcd> us, std::span<const Eigen::MatrixXcd> vs,
                                  const Eigen::VectorXcd &psi);

/// Random unitary pairs (V_j a perturbation of U_j); trial k seeded with seed + k.
std::vector<BoundReport> hybrid_argument_trials(int dim, int factors, int trials, std::uint64_t seed);

/// f(x) = amplitude * exp(-(x - center)^2 / width^2).
struct GaussianSpec {
    double center = 0.0;
    double width = 1.0;
    double amplitude = 1.0;
    double operator()(double x) const;
};

/// Checks
///   int f - int_{-inf}^{-1} f - int_N^inf f - f_max <= sum_{j<N} f(j) <= int f + f_max
/// with adaptive Gauss-Kronrod quadrature. The report carries the upper
/// bound; the lower one is in parameters["lower"].
BoundReport sum_bound_check(const GaussianSpec &f, int sites);

/// Random single-peak Gaussians on an N-site range; trial k seeded with seed + k.
std::vector<BoundReport> sum_bound_trials(int sites, int trials, std::uint64_t seed);

/// ||H_far |state>||.
double far_gate_residual(const StateVector &state, const SparseHamiltonian &h_far);

/// Gate couplings (without ring hopping) on every qubit over `length` sites
/// whose nearest site is `distance` ahead of `center` in the direction of
/// increasing site index.
SparseHamiltonian far_gate_hamiltonian(const RingSystem &sys, GateKind kind, double center, int distance, int length,
                                       double phi);

/// Ratio measured / shape: the constant that makes a bound of the given
/// shape tight on one instance.
double fit_constant(double measured, double shape);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// max / min of positive values.
double spread(std::span<const double> values);

}  // namespace spinring

#endif
