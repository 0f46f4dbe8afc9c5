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

#include "spinring/bounds.h"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numeric>

#include "spinring/error.h"

namespace spinring {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::MatrixXcd gaussian_matrix(int dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd m(dim, dim);
    for (int j = 0; j < dim; ++j) {
        for (int i = 0; i < dim; ++i) m(i, j) = cplx(g(rng), g(rng));
    }
    return m;
}

double integrate(const GaussianSpec &f, double a, double b) {
    using boost::math::quadrature::gauss_kronrod;
    auto piece = [&](double lo, double hi) {
        return gauss_kronrod<double, 61>::integrate([&](double x) { return f(x); }, lo, hi, 20, 1e-13);
    };
    if (a < f.center && f.center < b) return piece(a, f.center) + piece(f.center, b);
    return piece(a, b);
}

}  // namespace

double dispersion_bound(double t, double delta_p, int sites, int qubits, double c) {
    return c * qubits * t * std::pow(delta_p / sites, 3);
}

double transient_bound(int qubits, double t, double phi, double delta_p, int sites, double c1, double c2) {
    return c1 * qubits * t * std::abs(phi) + dispersion_bound(t, delta_p, sites, qubits, c2);
}

TrotterTerms trotter_terms(int qubits, double t, double n, double n_prime, double delta_p, int sites, double d,
                           double delta_x) {
    const double mt = static_cast<double>(qubits) * t;
    return {
        .far = t * sites * std::exp(-d * d / (2.0 * delta_x * delta_x)),
        .dispersion = mt * std::pow(delta_p / sites, 3),
        .inner = mt * mt / (n * n_prime),
        .outer = mt * mt / n_prime,
    };
}

double trotter_error_bound(int qubits, double t, double n, double n_prime, double delta_p, int sites, double d,
                           double delta_x, std::span<const double> cs) {
    if (cs.size() != 4) throw ShapeError("the localized-gate bound takes four constants");
    const auto terms = trotter_terms(qubits, t, n, n_prime, delta_p, sites, d, delta_x);
    return cs[0] * terms.far + cs[1] * terms.dispersion + cs[2] * terms.inner + cs[3] * terms.outer;
}

double TrotterDegrees::n(int sites) const { return std::pow(static_cast<double>(sites), q1); }

double TrotterDegrees::n_prime(int sites) const { return std::pow(static_cast<double>(sites), q2); }

double spectral_norm(const Eigen::MatrixXcd &a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    return svd.singularValues()(0);
}

Eigen::MatrixXcd skew_hermitian_exp(const Eigen::MatrixXcd &a, double t) {
    // A = -iK with K = iA Hermitian, so e^{At} = V e^{-i lambda t} V^dagger.
    const Eigen::MatrixXcd k = cplx(0.0, 1.0) * a;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (k + k.adjoint()));
    Eigen::VectorXcd phases(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < phases.size(); ++i) phases[i] = std::polar(1.0, -es.eigenvalues()[i] * t);
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXcd random_skew_hermitian(int dim, std::mt19937_64 &rng) {
    const Eigen::MatrixXcd g = gaussian_matrix(dim, rng);
    return 0.5 * (g - g.adjoint());
}

Eigen::MatrixXcd random_unitary(int dim, std::mt19937_64 &rng) {
    const Eigen::MatrixXcd g = gaussian_matrix(dim, rng);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        const cplx d = r(j, j);
        if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
    }
    return q;
}

BoundReport matrix_exp_sensitivity(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &e, double t) {
    if (a.rows() != a.cols() || e.rows() != a.rows() || e.cols() != a.cols()) {
        throw ShapeError("matrix exponential check needs equal square matrices");
    }
    BoundReport r;
    r.name = "matrix_exp_sensitivity";
    const double en = spectral_norm(e);
    r.parameters = {{"dim", static_cast<double>(a.rows())}, {"t", t}, {"norm_E", en}};
    r.measured_value = spectral_norm(skew_hermitian_exp(a + e, t) - skew_hermitian_exp(a, t));
    r.bound_value = en * t * std::exp(en * t);
    r.satisfied = r.measured_value <= r.bound_value * (1.0 + 1e-12) + 1e-13;
    return r;
}

std::vector<BoundReport> matrix_exp_sensitivity_check(int dim, int trials, std::uint64_t seed) {
    if (dim < 1 || dim > 64) throw ParameterError("matrix exponential check needs 1 <= dim <= 64");
    if (trials < 1) throw ParameterError("need at least one trial");
    std::vector<BoundReport> out;
    for (int k = 0; k < trials; ++k) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(k));
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const Eigen::MatrixXcd a = random_skew_hermitian(dim, rng);
        const double scale = std::pow(10.0, -3.0 * u(rng));
        const Eigen::MatrixXcd e = scale * random_skew_hermitian(dim, rng);
        const double t = 2.0 * (1.0 - u(rng));
        auto r = matrix_exp_sensitivity(a, e, t);
        r.parameters["trial"] = k;
        out.push_back(std::move(r));
    }
    return out;
}

BoundReport hybrid_argument_check(std::span<const Eigen::MatrixXcd> us, std::span<const Eigen::MatrixXcd> vs,
                                  const Eigen::VectorXcd &psi) {
    if (us.size() != vs.size() || us.empty()) throw ShapeError("hybrid argument needs two equal, non-empty lists");
    const Eigen::Index dim = psi.size();
    for (std::size_t i = 0; i < us.size(); ++i) {
        if (us[i].rows() != dim || us[i].cols() != dim || vs[i].rows() != dim || vs[i].cols() != dim) {
            throw ShapeError("hybrid argument operators must match the state dimension");
        }
    }
    Eigen::VectorXcd u_psi = psi;
    Eigen::VectorXcd v_psi = psi;
    double rhs = 0.0;
    for (std::size_t j = 0; j < us.size(); ++j) {
        rhs += ((us[j] - vs[j]) * u_psi).norm();
        u_psi = us[j] * u_psi;
        v_psi = vs[j] * v_psi;
    }
    BoundReport r;
    r.name = "hybrid_argument";
    r.parameters = {{"dim", static_cast<double>(dim)}, {"n", static_cast<double>(us.size())}};
    r.measured_value = (u_psi - v_psi).norm();
    r.bound_value = rhs;
    r.satisfied = r.measured_value <= r.bound_value + 1e-10;
    return r;
}

std::vector<BoundReport> hybrid_argument_trials(int dim, int factors, int trials, std::uint64_t seed) {
    if (dim < 1 || dim > 256) throw ParameterError("hybrid argument check needs 1 <= dim <= 256");
    std::vector<BoundReport> out;
    for (int k = 0; k < trials; ++k) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(k));
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<Eigen::MatrixXcd> us, vs;
        for (int j = 0; j < factors; ++j) {
            us.push_back(random_unitary(dim, rng));
            const double eps = std::pow(10.0, -3.0 * u(rng));
            vs.push_back(us.back() * skew_hermitian_exp(random_skew_hermitian(dim, rng), eps));
        }
        std::normal_distribution<double> g;
        Eigen::VectorXcd psi(dim);
        for (auto &x : psi) x = cplx(g(rng), g(rng));
        psi.normalize();
        auto r = hybrid_argument_check(us, vs, psi);
        r.parameters["trial"] = k;
        out.push_back(std::move(r));
    }
    return out;
}

double GaussianSpec::operator()(double x) const {
    const double u = (x - center) / width;
    return amplitude * std::exp(-u * u);
}

BoundReport sum_bound_check(const GaussianSpec &f, int sites) {
    if (!(f.width > 0) || !(f.amplitude > 0)) throw ParameterError("Gaussian needs positive width and amplitude");
    if (sites < 1) throw ParameterError("sum needs at least one term");
    double sum = 0.0;
    for (int j = 0; j < sites; ++j) sum += f(j);
    const double total = integrate(f, -kInf, kInf);
    const double left = integrate(f, -kInf, -1.0);
    const double right = integrate(f, sites, kInf);
    const double f_max = f.amplitude;
    BoundReport r;
    r.name = "sum_bound";
    r.parameters = {{"N", static_cast<double>(sites)},  {"center", f.center}, {"width", f.width},
                    {"amplitude", f.amplitude},         {"integral", total},  {"lower", total - left - right - f_max}};
    r.measured_value = sum;
    r.bound_value = total + f_max;
    const double slack = 1e-10 * (total + f_max);
    r.satisfied = sum <= r.bound_value + slack && r.parameters["lower"] <= sum + slack;
    return r;
}

std::vector<BoundReport> sum_bound_trials(int sites, int trials, std::uint64_t seed) {
    std::vector<BoundReport> out;
    for (int k = 0; k < trials; ++k) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(k));
        std::uniform_real_distribution<double> u(0.0, 1.0);
        GaussianSpec f;
        f.center = sites * (-0.25 + 1.5 * u(rng));
        f.width = std::pow(10.0, -1.0 + (1.0 + std::log10(static_cast<double>(sites))) * u(rng));
        f.amplitude = 0.1 + 9.9 * u(rng);
        auto r = sum_bound_check(f, sites);
        r.parameters["trial"] = k;
        out.push_back(std::move(r));
    }
    return out;
}

double far_gate_residual(const StateVector &state, const SparseHamiltonian &h_far) {
    return h_far.apply(state).norm();
}

SparseHamiltonian far_gate_hamiltonian(const RingSystem &sys, GateKind kind, double center, int distance, int length,
                                       double phi) {
    if (distance < 0) throw ParameterError("distance must be non-negative");
    const int start = wrap_site(static_cast<long long>(std::ceil(center - 1e-9)) + distance, sys.sites());
    SparseHamiltonian h(sys);
    if (kind == GateKind::CPHASE) {
        for (int q = 0; q + 1 < sys.qubits(); q += 2) {
            h += build_gate({kind, {q, q + 1}, start, length, phi, length}, sys);
        }
    } else {
        for (int q = 0; q < sys.qubits(); ++q) h += build_gate({kind, {q}, start, length, phi, 1}, sys);
    }
    return h;
}

double fit_constant(double measured, double shape) {
    if (!(shape > 0)) throw ParameterError("bound shape must be positive to fit a constant");
    return measured / shape;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw ShapeError("slope fit needs two equal lists of length >= 2");
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0) || !(y[i] > 0)) throw ParameterError("log-log fit needs positive values");
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double spread(std::span<const double> values) {
    if (values.empty()) return 1.0;
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    if (!(*lo > 0)) return std::numeric_limits<double>::infinity();
    return *hi / *lo;
}

}  // namespace spinring
