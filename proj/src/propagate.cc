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

#include "spinring/propagate.h"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "spinring/error.h"
#include "spinring/kernels.h"
#include "spinring/packets.h"

namespace spinring {

namespace {

constexpr double kPi = std::numbers::pi;

struct ChebyshevSeries {
    std::vector<double> bessel;  // J_k(|z|), k = 0..K
    double tail = 0.0;           // bound on sum_{k>K} 2|J_k|
};

// Smallest series whose discarded tail is below `target`.
ChebyshevSeries chebyshev_series(double z, double target, int max_terms) {
    ChebyshevSeries s;
    const double az = std::abs(z);
    for (int k = 0;; ++k) {
        const double j = std::cyl_bessel_j(static_cast<double>(k), az);
        s.bessel.push_back(j);
        if (k > az + 1.0) {
            // Beyond the turning point |J_{k+1}| <= |J_k| * az / (k + 1), so the
            // tail is dominated by a geometric series in ratio r < 1.
            const double r = az / (k + 1.0);
            const double next = std::abs(j) * r;
            const double tail = 2.0 * next / (1.0 - r);
            if (tail < target) {
                s.tail = tail;
                return s;
            }
            if (k >= max_terms) {
                s.tail = tail;
                throw PropagationError("Chebyshev expansion needs more than " + std::to_string(max_terms) +
                                           " terms; achieved residual " + std::to_string(tail),
                                       tail);
            }
        }
    }
}

void chebyshev_step(const SparseHamiltonian &h, std::vector<cplx> &psi, double dt, double center,
                    double half_width, double target, int max_terms) {
    const std::size_t dim = psi.size();
    const ChebyshevSeries series = chebyshev_series(half_width * dt, target, max_terms);
    const double sign = dt < 0 ? -1.0 : 1.0;

    std::vector<cplx> t_prev = psi;  // T_0 psi
    std::vector<cplx> t_cur(dim);
    std::vector<cplx> scratch(dim);
    std::vector<cplx> result(dim);

    auto scaled_apply = [&](std::span<const cplx> in, std::span<cplx> out) {
        h.apply(in, out);
        kernels::combine(1.0 / half_width, out, -center / half_width, in, out);
    };

    // c_k = (2 - delta_k0) (-i)^k J_k(a dt); J_k(-x) = (-1)^k J_k(x).
    auto coefficient = [&](std::size_t k) {
        static const cplx powers[4] = {1.0, cplx(0, -1), -1.0, cplx(0, 1)};
        const double parity = (k % 2 == 1 && sign < 0) ? -1.0 : 1.0;
        return (k == 0 ? 1.0 : 2.0) * parity * series.bessel[k] * powers[k % 4];
    };

    kernels::combine(coefficient(0), t_prev, 0.0, t_prev, result);
    if (series.bessel.size() > 1) {
        scaled_apply(t_prev, t_cur);
        kernels::axpy(coefficient(1), t_cur, result);
    }
    for (std::size_t k = 2; k < series.bessel.size(); ++k) {
        scaled_apply(t_cur, scratch);
        kernels::combine(2.0, scratch, -1.0, t_prev, scratch);
        std::swap(t_prev, t_cur);
        std::swap(t_cur, scratch);
        kernels::axpy(coefficient(k), t_cur, result);
    }
    const cplx shift = std::polar(1.0, -center * dt);
    kernels::combine(shift, result, 0.0, result, psi);
}

StateVector evolve_iterative(const StateVector &state, const SparseHamiltonian &h, double t,
                             const PropagatorConfig &cfg) {
    const auto [lo, hi] = h.spectral_bounds();
    const double center = 0.5 * (lo + hi);
    const double half_width = 0.5 * (hi - lo);
    std::vector<cplx> psi(state.amplitudes().begin(), state.amplitudes().end());
    if (half_width < 1e-14) {
        const cplx phase = std::polar(1.0, -center * t);
        for (auto &a : psi) a *= phase;
        return StateVector(state.system(), std::move(psi));
    }
    const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(t) / cfg.max_step)));
    const double dt = t / steps;
    const double scale = std::sqrt(kernels::norm_sq(psi));
    const double target = cfg.tol / steps / std::max(scale, 1e-300);
    for (int s = 0; s < steps; ++s) chebyshev_step(h, psi, dt, center, half_width, target, cfg.max_terms);
    return StateVector(state.system(), std::move(psi));
}

std::vector<cplx> translation_kernel(int sites, double shift) {
    const int p0 = sites / 4;
    std::vector<cplx> phases(sites);
    for (int p = 0; p < sites; ++p) {
        // Representative of p in [p0 - N/2, p0 + N/2), measured from p0.
        const int rel = wrap_site(static_cast<long long>(p) - p0 + sites / 2, sites) - sites / 2;
        const double turns = std::fmod(static_cast<double>(rel) * shift, static_cast<double>(sites));
        phases[p] = std::polar(1.0, -2.0 * kPi * turns / sites);
    }
    // Circulant kernel k[d] = N^{-1} sum_p e^{2 pi i p d / N} phase_p.
    std::vector<cplx> kernel = finite_fourier(phases, FourierDirection::inverse);
    const double scale = 1.0 / std::sqrt(static_cast<double>(sites));
    for (auto &k : kernel) k *= scale;
    return kernel;
}

}  // namespace

StateVector evolve(const StateVector &state, const SparseHamiltonian &h, double t, const PropagatorConfig &cfg) {
    if (!(state.system() == h.system())) throw ShapeError("state and operator live on different ring systems");
    if (!(cfg.tol > 0)) throw ParameterError("propagator tolerance must be positive");
    if (t == 0.0) return state;
    if (cfg.method == PropagatorMethod::dense_eigen) return DensePropagator(h).evolve(state, t);
    return evolve_iterative(state, h, t, cfg);
}

DensePropagator::DensePropagator(const SparseHamiltonian &h) : sys_(h.system()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.dense());
    values_ = es.eigenvalues();
    vectors_ = es.eigenvectors();
}

StateVector DensePropagator::evolve(const StateVector &state, double t) const {
    if (!(state.system() == sys_)) throw ShapeError("state and operator live on different ring systems");
    const auto d = static_cast<Eigen::Index>(state.size());
    Eigen::Map<const Eigen::VectorXcd> psi(state.amplitudes().data(), d);
    Eigen::VectorXcd coeffs = vectors_.transpose().cast<cplx>() * psi;
    for (Eigen::Index k = 0; k < d; ++k) coeffs(k) *= std::polar(1.0, -values_(k) * t);
    Eigen::VectorXcd out = vectors_.cast<cplx>() * coeffs;
    return StateVector(sys_, std::vector<cplx>(out.data(), out.data() + d));
}

StateVector ideal_translate(const StateVector &state, double shift) {
    const RingSystem &sys = state.system();
    const std::vector<cplx> kernel = translation_kernel(sys.sites(), shift);
    std::vector<cplx> a(state.amplitudes().begin(), state.amplitudes().end());
    std::vector<cplx> b(a.size());
    for (int q = 0; q < sys.qubits(); ++q) {
        kernels::circulant(kernel, sys.sites(), sys.stride(q), a, b);
        std::swap(a, b);
    }
    return StateVector(sys, std::move(a));
}

StateVector apply_block_phases(const StateVector &state, std::span<const GateRegion> block, double t) {
    const RingSystem &sys = state.system();
    const std::size_t n = sys.sites();
    const std::size_t local = sys.local_dim();
    StateVector out = state;
    auto rail_of = [&](std::size_t i, int q) { return ((i / sys.stride(q)) % local) >= n ? 1 : 0; };
    for (const auto &region : block) {
        validate(region, sys);
        const double angle = region.phi * t;
        const cplx phase = std::polar(1.0, -angle);
        switch (region.kind) {
            case GateKind::Z:
                for (std::size_t i = 0; i < out.size(); ++i) {
                    if (rail_of(i, region.qubits[0])) out[i] *= phase;
                }
                break;
            case GateKind::CPHASE:
                for (std::size_t i = 0; i < out.size(); ++i) {
                    if (rail_of(i, region.qubits[0]) && rail_of(i, region.qubits[1])) out[i] *= phase;
                }
                break;
            case GateKind::X: {
                // e^{-i angle X} on each (rail 0, rail 1) amplitude pair.
                const std::size_t offset = n * sys.stride(region.qubits[0]);
                const double c = std::cos(angle), s = std::sin(angle);
                for (std::size_t i = 0; i < out.size(); ++i) {
                    if (rail_of(i, region.qubits[0])) continue;
                    const cplx a0 = out[i], a1 = out[i + offset];
                    out[i] = c * a0 - cplx(0, s) * a1;
                    out[i + offset] = -cplx(0, s) * a0 + c * a1;
                }
                break;
            }
        }
    }
    return out;
}

StateVector ideal_gate_unitary(const StateVector &state, std::span<const GateRegion> block, double t) {
    return ideal_translate(apply_block_phases(state, block, t), kPropagationDirection * kGroupSpeed * t);
}

}  // namespace spinring
