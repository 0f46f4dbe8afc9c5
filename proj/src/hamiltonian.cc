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

#include "spinring/hamiltonian.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>

#include "spinring/error.h"

namespace spinring {

std::string to_string(GateKind kind) {
    switch (kind) {
        case GateKind::Z: return "Z";
        case GateKind::X: return "X";
        case GateKind::CPHASE: return "CPHASE";
    }
    return "?";
}

GateKind gate_kind_from_string(const std::string &name) {
    if (name == "Z") return GateKind::Z;
    if (name == "X") return GateKind::X;
    if (name == "CPHASE") return GateKind::CPHASE;
    throw ParameterError("unknown gate kind '" + name + "'");
}

bool GateRegion::covers(int site, int sites) const {
    return wrap_site(static_cast<long long>(site) - start, sites) < length;
}

void validate(const GateRegion &region, const RingSystem &sys) {
    const int n = sys.sites();
    if (region.length <= 0 || region.length > n) {
        throw ParameterError("gate length must be in (0, N], got " + std::to_string(region.length));
    }
    if (!std::isfinite(region.phi)) throw ParameterError("gate strength must be finite");
    const std::size_t want = region.kind == GateKind::CPHASE ? 2 : 1;
    if (region.qubits.size() != want) {
        throw ParameterError(to_string(region.kind) + " gate needs " + std::to_string(want) + " qubit(s)");
    }
    for (int q : region.qubits) {
        if (q < 0 || q >= sys.qubits()) throw RangeError("gate qubit " + std::to_string(q) + " out of range");
    }
    if (region.kind == GateKind::CPHASE) {
        if (region.qubits[0] == region.qubits[1]) throw ParameterError("CPHASE needs two distinct qubits");
        if (region.band < 1) throw ParameterError("CPHASE band width must be at least 1");
    }
}

SparseHamiltonian::SparseHamiltonian(const RingSystem &sys) : sys_(sys) {
    tables_.sites = sys.sites();
    tables_.qubits = sys.qubits();
    tables_.onsite.assign(sys.qubits(), std::vector<double>(2 * sys.sites(), 0.0));
    tables_.rung.assign(sys.qubits(), std::vector<double>(sys.sites(), 0.0));
}

void SparseHamiltonian::apply(std::span<const cplx> x, std::span<cplx> y, kernels::Exec exec) const {
    if (x.size() != dim() || y.size() != dim()) throw ShapeError("operator applied to a vector of wrong length");
    kernels::apply(tables_, x, y, exec);
}

StateVector SparseHamiltonian::apply(const StateVector &x) const {
    if (!(x.system() == sys_)) throw ShapeError("operator and state live on different ring systems");
    StateVector y(sys_);
    apply(x.amplitudes(), y.amplitudes());
    return y;
}

std::vector<std::pair<std::size_t, double>> SparseHamiltonian::row(std::size_t index) const {
    if (index >= dim()) throw RangeError("row index out of range");
    const int n = sys_.sites();
    const std::size_t local = sys_.local_dim();
    std::vector<std::pair<std::size_t, double>> out;
    double diag = 0.0;
    std::vector<std::size_t> locals(sys_.qubits());
    std::vector<std::pair<std::size_t, double>> off;
    for (int b = 0; b < sys_.qubits(); ++b) {
        const std::size_t stride = sys_.stride(b);
        const std::size_t l = (index / stride) % local;
        locals[b] = l;
        const int rail = static_cast<int>(l) / n;
        const int site = static_cast<int>(l) % n;
        diag += tables_.onsite[b][l];
        if (tables_.hopping != 0.0) {
            const std::size_t base = index - static_cast<std::size_t>(site) * stride;
            off.emplace_back(base + static_cast<std::size_t>(wrap_site(site + 1, n)) * stride, tables_.hopping);
            off.emplace_back(base + static_cast<std::size_t>(wrap_site(site - 1, n)) * stride, tables_.hopping);
        }
        const double r = tables_.rung[b][site];
        if (r != 0.0) {
            const std::size_t partner = rail == 0 ? index + n * stride : index - n * stride;
            off.emplace_back(partner, r);
        }
    }
    for (const auto &pair : tables_.pairs) {
        const std::size_t l1 = locals[pair.q1], l2 = locals[pair.q2];
        if (l1 >= static_cast<std::size_t>(n) && l2 >= static_cast<std::size_t>(n)) {
            diag += pair.values[(l1 - n) * n + (l2 - n)];
        }
    }
    if (diag != 0.0) out.emplace_back(index, diag);
    out.insert(out.end(), off.begin(), off.end());
    return out;
}

std::vector<Triplet> SparseHamiltonian::triplets() const {
    std::vector<Triplet> out;
    for (std::size_t i = 0; i < dim(); ++i) {
        for (const auto &[col, v] : row(i)) out.push_back({i, col, v});
    }
    return out;
}

Eigen::MatrixXd SparseHamiltonian::dense() const {
    if (dim() > kDenseLimit) {
        throw ShapeError("dense export limited to dimension " + std::to_string(kDenseLimit) + ", got " +
                         std::to_string(dim()));
    }
    const auto d = static_cast<Eigen::Index>(dim());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t i = 0; i < dim(); ++i) {
        for (const auto &[col, v] : row(i)) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(col)) += v;
    }
    return m;
}

std::pair<double, double> SparseHamiltonian::spectral_bounds() const {
    // Per-qubit extremes add up; pair terms add their own extremes.
    double lo = 0.0, hi = 0.0;
    for (int b = 0; b < sys_.qubits(); ++b) {
        double qlo = 0.0, qhi = 0.0;
        bool first = true;
        const int n = sys_.sites();
        for (int l = 0; l < 2 * n; ++l) {
            const double radius = 2.0 * std::abs(tables_.hopping) + std::abs(tables_.rung[b][l % n]);
            const double a = tables_.onsite[b][l] - radius;
            const double c = tables_.onsite[b][l] + radius;
            qlo = first ? a : std::min(qlo, a);
            qhi = first ? c : std::max(qhi, c);
            first = false;
        }
        lo += qlo;
        hi += qhi;
    }
    for (const auto &pair : tables_.pairs) {
        const auto [mn, mx] = std::minmax_element(pair.values.begin(), pair.values.end());
        lo += std::min(0.0, *mn);
        hi += std::max(0.0, *mx);
    }
    return {lo, hi};
}

SparseHamiltonian &SparseHamiltonian::operator+=(const SparseHamiltonian &other) {
    if (!(sys_ == other.sys_)) throw ShapeError("cannot add operators on different ring systems");
    tables_.hopping += other.tables_.hopping;
    for (int b = 0; b < sys_.qubits(); ++b) {
        for (std::size_t l = 0; l < tables_.onsite[b].size(); ++l) tables_.onsite[b][l] += other.tables_.onsite[b][l];
        for (std::size_t s = 0; s < tables_.rung[b].size(); ++s) tables_.rung[b][s] += other.tables_.rung[b][s];
    }
    for (const auto &pair : other.tables_.pairs) {
        auto it = std::find_if(tables_.pairs.begin(), tables_.pairs.end(),
                               [&](const auto &p) { return p.q1 == pair.q1 && p.q2 == pair.q2; });
        if (it == tables_.pairs.end()) {
            tables_.pairs.push_back(pair);
        } else {
            for (std::size_t k = 0; k < pair.values.size(); ++k) it->values[k] += pair.values[k];
        }
    }
    return *this;
}

SparseHamiltonian &SparseHamiltonian::operator*=(double factor) {
    tables_.hopping *= factor;
    for (auto &v : tables_.onsite) for (auto &x : v) x *= factor;
    for (auto &v : tables_.rung) for (auto &x : v) x *= factor;
    for (auto &p : tables_.pairs) for (auto &x : p.values) x *= factor;
    return *this;
}

SparseHamiltonian operator+(SparseHamiltonian a, const SparseHamiltonian &b) { return a += b; }

SparseHamiltonian operator-(SparseHamiltonian a, const SparseHamiltonian &b) {
    SparseHamiltonian neg = b;
    neg *= -1.0;
    return a += neg;
}

SparseHamiltonian build_ring(const RingSystem &sys) {
    SparseHamiltonian h(sys);
    h.tables().hopping = 1.0;
    return h;
}

SparseHamiltonian build_gate(const GateRegion &region, const RingSystem &sys, bool extended) {
    validate(region, sys);
    SparseHamiltonian h(sys);
    const int n = sys.sites();
    auto inside = [&](int s) { return extended || region.covers(s, n); };
    auto &t = h.tables();
    switch (region.kind) {
        case GateKind::Z:
            for (int s = 0; s < n; ++s) {
                if (inside(s)) t.onsite[region.qubits[0]][n + s] += region.phi;
            }
            break;
        case GateKind::X:
            for (int s = 0; s < n; ++s) {
                if (inside(s)) t.rung[region.qubits[0]][s] += region.phi;
            }
            break;
        case GateKind::CPHASE: {
            // Stored with the lower qubit first so that sums merge tables.
            int q1 = region.qubits[0], q2 = region.qubits[1];
            const bool swapped = q1 > q2;
            if (swapped) std::swap(q1, q2);
            kernels::PairTable pair{q1, q2, std::vector<double>(static_cast<std::size_t>(n) * n, 0.0)};
            for (int s1 = 0; s1 < n; ++s1) {
                for (int s2 = 0; s2 < n; ++s2) {
                    const bool coupled =
                        extended || (inside(s1) && inside(s2) && ring_distance(s1, s2, n) <= region.band);
                    if (coupled) pair.values[static_cast<std::size_t>(s1) * n + s2] = region.phi;
                }
            }
            t.pairs.push_back(std::move(pair));
            break;
        }
    }
    return h;
}

SparseHamiltonian assemble(std::span<const GateRegion> regions, const RingSystem &sys) {
    SparseHamiltonian h = build_ring(sys);
    for (const auto &r : regions) h += build_gate(r, sys, false);
    return h;
}

std::pair<double, double> lanczos_extremes(const SparseHamiltonian &h, double tol, int max_iterations) {
    const std::size_t dim = h.dim();
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> gauss;
    std::vector<cplx> v(dim), v_prev(dim, 0.0), w(dim);
    for (auto &x : v) x = gauss(rng);
    const double n0 = std::sqrt(kernels::norm_sq(v));
    for (auto &x : v) x /= n0;

    std::vector<double> alpha, beta;
    double last_residual = 0.0;
    const int limit = static_cast<int>(std::min<std::size_t>(max_iterations, dim));
    for (int k = 0; k < limit; ++k) {
        h.apply(v, w);
        const double a = kernels::dot(v, w).real();
        alpha.push_back(a);
        kernels::axpy(-a, v, w);
        if (k > 0) kernels::axpy(-beta.back(), v_prev, w);
        const double b = std::sqrt(kernels::norm_sq(w));

        const bool exhausted = b < 1e-12 || k + 1 == limit;
        if (exhausted || (k + 1) % 10 == 0) {
            const auto size = static_cast<Eigen::Index>(alpha.size());
            Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), size);
            Eigen::VectorXd sub(std::max<Eigen::Index>(size - 1, 0));
            for (Eigen::Index i = 0; i + 1 < size; ++i) sub(i) = beta[i];
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
            es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
            const auto &vals = es.eigenvalues();
            const auto &vecs = es.eigenvectors();
            const double scale = std::max({std::abs(vals(0)), std::abs(vals(size - 1)), 1e-300});
            const double r_lo = std::abs(b * vecs(size - 1, 0));
            const double r_hi = std::abs(b * vecs(size - 1, size - 1));
            last_residual = std::max(r_lo, r_hi) / scale;
            if (last_residual <= tol || b < 1e-12) return {vals(0), vals(size - 1)};
            if (exhausted) break;
        }
        beta.push_back(b);
        std::swap(v_prev, v);
        for (std::size_t i = 0; i < dim; ++i) v[i] = w[i] / b;
    }
    throw IterationError("Lanczos did not converge: relative residual " + std::to_string(last_residual) +
                             " after " + std::to_string(alpha.size()) + " iterations",
                         static_cast<int>(alpha.size()), last_residual);
}

double operator_norm_on_V(const SparseHamiltonian &h, std::size_t dense_cutoff) {
    if (h.dim() <= std::min(dense_cutoff, SparseHamiltonian::kDenseLimit)) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.dense(), Eigen::EigenvaluesOnly);
        const auto &vals = es.eigenvalues();
        return std::max(std::abs(vals(0)), std::abs(vals(vals.size() - 1)));
    }
    const auto [lo, hi] = lanczos_extremes(h);
    return std::max(std::abs(lo), std::abs(hi));
}

void write_triplets(const SparseHamiltonian &h, std::ostream &out) {
    out << std::setprecision(17);
    for (std::size_t i = 0; i < h.dim(); ++i) {
        for (const auto &[col, v] : h.row(i)) out << i << ' ' << col << ' ' << v << ' ' << 0.0 << '\n';
    }
}

}  // namespace spinring
