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

#include <gtest/gtest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "spinring/error.h"
#include "test_util.h"

using namespace spinring;

TEST(bounds, dispersion_bound_shape) {
    EXPECT_EQ(dispersion_bound(0.0, 16, 64, 1, 3.0), 0.0);
    EXPECT_DOUBLE_EQ(dispersion_bound(5.0, 16, 64, 2, 3.0), 2 * dispersion_bound(5.0, 16, 64, 1, 3.0));
    EXPECT_DOUBLE_EQ(dispersion_bound(32.0, 16, 64, 1, 1.0), 32.0 / 64.0);
}

TEST(bounds, transient_bound_shape) {
    EXPECT_DOUBLE_EQ(transient_bound(1, 8, 0.0, 4, 64, 2.0, 3.0), dispersion_bound(8, 4, 64, 1, 3.0));
    EXPECT_DOUBLE_EQ(transient_bound(2, 16, 0.01, 4, 64, 2.0, 3.0), 2 * transient_bound(2, 8, 0.01, 4, 64, 2.0, 3.0));
    EXPECT_DOUBLE_EQ(transient_bound(1, 8, -0.01, 4, 64, 2.0, 0.0), 2.0 * 8 * 0.01);
}

TEST(bounds, trotter_bound_limits) {
    const std::vector<double> cs{1.0, 2.0, 3.0, 4.0};
    EXPECT_EQ(trotter_error_bound(1, 0.0, 10, 10, 5, 128, 10, 5, cs), 0.0);
    const double big = 1e30;
    const auto terms = trotter_terms(2, 20, big, big, 5, 128, 10, 5);
    EXPECT_NEAR(trotter_error_bound(2, 20, big, big, 5, 128, 10, 5, cs), terms.far + 2 * terms.dispersion, 1e-20);
    EXPECT_DOUBLE_EQ(terms.far, 20 * 128 * std::exp(-2.0));
    EXPECT_DOUBLE_EQ(trotter_terms(2, 3, 4, 5, 1, 8, 1, 1).inner, 36.0 / 20.0);
    EXPECT_DOUBLE_EQ(trotter_terms(2, 3, 4, 5, 1, 8, 1, 1).outer, 36.0 / 5.0);
    EXPECT_THROW(trotter_error_bound(1, 1, 1, 1, 1, 8, 1, 1, std::vector<double>{1.0}), ShapeError);
    EXPECT_DOUBLE_EQ(TrotterDegrees{}.n(16), 256.0);
}

TEST(bounds, skew_hermitian_exponential_matches_pade_oracle) {
    std::mt19937_64 rng(3);
    for (int dim : {1, 4, 16}) {
        const Eigen::MatrixXcd a = random_skew_hermitian(dim, rng);
        EXPECT_LT((a + a.adjoint()).norm(), 1e-14);
        const Eigen::MatrixXcd ref = (a * 0.7).exp();
        EXPECT_LT((skew_hermitian_exp(a, 0.7) - ref).norm(), 1e-12);
    }
}

TEST(bounds, random_unitary_is_unitary) {
    std::mt19937_64 rng(1);
    const Eigen::MatrixXcd u = random_unitary(8, rng);
    EXPECT_LT((u.adjoint() * u - Eigen::MatrixXcd::Identity(8, 8)).norm(), 1e-13);
    EXPECT_NEAR(spectral_norm(u), 1.0, 1e-13);
}

TEST(bounds, matrix_exp_sensitivity_examples) {
    std::mt19937_64 rng(5);
    const Eigen::MatrixXcd a = random_skew_hermitian(6, rng);
    const auto zero = matrix_exp_sensitivity(a, Eigen::MatrixXcd::Zero(6, 6), 1.0);
    EXPECT_EQ(zero.bound_value, 0.0);
    EXPECT_LT(zero.measured_value, 1e-15);
    EXPECT_TRUE(zero.satisfied);
    const double eps = 0.3, t = 1.5;
    const auto scalar = matrix_exp_sensitivity(Eigen::MatrixXcd::Zero(3, 3),
                                               cplx(0, eps) * Eigen::MatrixXcd::Identity(3, 3), t);
    EXPECT_NEAR(scalar.measured_value, std::abs(std::polar(1.0, eps * t) - 1.0), 1e-14);
    EXPECT_NEAR(scalar.bound_value, eps * t * std::exp(eps * t), 1e-14);
    EXPECT_TRUE(scalar.satisfied);
}

TEST(bounds, matrix_exp_sensitivity_trials) {
    const auto reports = matrix_exp_sensitivity_check(16, 100, 42);
    ASSERT_EQ(reports.size(), 100u);
    for (const auto &r : reports) EXPECT_TRUE(r.satisfied) << r.parameters.at("trial");
    EXPECT_EQ(matrix_exp_sensitivity_check(4, 3, 9)[1].measured_value,
              matrix_exp_sensitivity_check(4, 3, 10)[0].measured_value);
    EXPECT_THROW(matrix_exp_sensitivity_check(65, 1, 0), ParameterError);
}

TEST(bounds, hybrid_argument_examples) {
    std::mt19937_64 rng(8);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Random(8).normalized();
    std::vector<Eigen::MatrixXcd> u{random_unitary(8, rng)}, v{random_unitary(8, rng)};
    const auto single = hybrid_argument_check(u, v, psi);
    EXPECT_NEAR(single.measured_value, single.bound_value, 1e-14);
    std::vector<Eigen::MatrixXcd> us, vs;
    for (int i = 0; i < 5; ++i) us.push_back(random_unitary(8, rng));
    const auto same = hybrid_argument_check(us, us, psi);
    EXPECT_EQ(same.measured_value, 0.0);
    EXPECT_EQ(same.bound_value, 0.0);
    EXPECT_TRUE(same.satisfied);
    for (int i = 0; i < 5; ++i) vs.push_back(random_unitary(8, rng));
    const auto r = hybrid_argument_check(us, vs, psi);
    EXPECT_TRUE(r.satisfied);
    // Direct product oracle.
    Eigen::MatrixXcd pu = Eigen::MatrixXcd::Identity(8, 8), pv = pu;
    for (int i = 0; i < 5; ++i) {
        pu = us[i] * pu;
        pv = vs[i] * pv;
    }
    EXPECT_NEAR(r.measured_value, ((pu - pv) * psi).norm(), 1e-13);
    vs.pop_back();
    EXPECT_THROW(hybrid_argument_check(us, vs, psi), ShapeError);
    EXPECT_THROW(hybrid_argument_check(us, us, Eigen::VectorXcd::Ones(4)), ShapeError);
}

TEST(bounds, hybrid_argument_trials_hold) {
    for (const auto &r : hybrid_argument_trials(8, 5, 100, 7)) EXPECT_TRUE(r.satisfied);
}

TEST(bounds, sum_bound_examples) {
    const GaussianSpec f{16.0, 8.0, 1.0};
    const auto r = sum_bound_check(f, 64);
    EXPECT_TRUE(r.satisfied);
    EXPECT_NEAR(r.parameters.at("integral"), 8.0 * std::sqrt(M_PI), 1e-10);
    const double left = 0.5 * 8.0 * std::sqrt(M_PI) * std::erfc(17.0 / 8.0);
    const double right = 0.5 * 8.0 * std::sqrt(M_PI) * std::erfc(48.0 / 8.0);
    EXPECT_NEAR(r.parameters.at("lower"), 8.0 * std::sqrt(M_PI) - left - right - 1.0, 1e-10);

    const auto peaked = sum_bound_check({20.0, 1e-3, 2.0}, 64);
    EXPECT_TRUE(peaked.satisfied);
    EXPECT_NEAR(peaked.measured_value, 2.0, 1e-12);
    EXPECT_NEAR(peaked.bound_value, 2.0 + 2e-3 * std::sqrt(M_PI), 1e-9);

    const auto sym = sum_bound_check({32.0, 5.0, 1.0}, 64);
    EXPECT_GE(sym.bound_value - sym.measured_value, 0.0);
    EXPECT_GE(sym.measured_value - sym.parameters.at("lower"), 0.0);
}

TEST(bounds, sum_bound_trials_hold) {
    for (int n : {16, 64, 256}) {
        for (const auto &r : sum_bound_trials(n, 100, 11)) EXPECT_TRUE(r.satisfied) << n;
    }
}

TEST(bounds, far_gate_residual_matches_tail_oracle) {
    const int n = 128;
    RingSystem sys(n, 1);
    const double dx = std::cbrt(n);
    const double x0 = 40.0, phi = 0.1;
    const auto spec = PacketSpec::from_delta_x(n, x0, dx);
    const auto psi = tensor_encode("1", spec, sys);
    EXPECT_EQ(far_gate_residual(psi, SparseHamiltonian(sys)), 0.0);

    const int d = static_cast<int>(std::lround(3 * dx));
    const int len = 20;
    const auto h = far_gate_hamiltonian(sys, GateKind::Z, x0, d, len, phi);
    const auto wave = make_packet(spec, n);
    double tail = 0.0;
    for (int x = 0; x < len; ++x) tail += std::norm(wave.amplitudes[wrap_site(static_cast<int>(x0) + d + x, n)]);
    const double res = far_gate_residual(psi, h);
    EXPECT_NEAR(res, phi * std::sqrt(tail), 1e-15);
    EXPECT_LE(res, phi * n * std::exp(-d * d / (2 * dx * dx)) * 10);

    const double near = far_gate_residual(psi, far_gate_hamiltonian(sys, GateKind::Z, x0, 0, len, phi));
    EXPECT_GT(near, 0.3 * phi * psi.norm());
    EXPECT_LT(near, phi * psi.norm());
}

TEST(bounds, fit_helpers) {
    std::vector<double> x{32, 64, 128, 256}, y;
    for (double v : x) y.push_back(5.0 * std::pow(v, -0.3));
    EXPECT_NEAR(loglog_slope(x, y), -0.3, 1e-12);
    EXPECT_DOUBLE_EQ(spread(std::vector<double>{2.0, 6.0, 3.0}), 3.0);
    EXPECT_DOUBLE_EQ(fit_constant(3.0, 1.5), 2.0);
    EXPECT_THROW(fit_constant(1.0, 0.0), ParameterError);
}
