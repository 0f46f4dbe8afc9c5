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

#include "spinring/packets.h"

#include <gtest/gtest.h>

#include <cmath>

#include "spinring/error.h"
#include "test_util.h"

using namespace spinring;

namespace {

// Wrapped Gaussian in position space, summed directly from its definition.
std::vector<cplx> position_oracle(int n, double x0, int p0, double dx, int cutoff) {
    std::vector<cplx> a(n);
    for (int x = 0; x < n; ++x) {
        double env = 0.0;
        for (int alpha = -cutoff; alpha <= cutoff; ++alpha) {
            const double d = x - x0 + alpha * n;
            env += std::exp(-d * d / (2.0 * dx * dx));
        }
        a[x] = std::polar(env / std::sqrt(dx * std::sqrt(M_PI)), 2.0 * M_PI * p0 * x / n);
    }
    return a;
}

double l2(const std::vector<cplx> &a, const std::vector<cplx> &b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
    return std::sqrt(s);
}

double vec_norm(const std::vector<cplx> &a) {
    double s = 0.0;
    for (const auto &x : a) s += std::norm(x);
    return std::sqrt(s);
}

}  // namespace

TEST(fourier, delta_maps_to_uniform) {
    std::vector<cplx> delta(16, 0.0);
    delta[0] = 1.0;
    for (const auto &v : finite_fourier(delta, FourierDirection::forward)) {
        EXPECT_NEAR(std::abs(v - cplx(0.25)), 0.0, 1e-15);
    }
}

TEST(fourier, matches_direct_sum_and_is_unitary) {
    const auto v = test_util::random_vector(24, 9);
    const auto f = finite_fourier(v, FourierDirection::forward);
    for (int p = 0; p < 24; ++p) {
        cplx acc = 0.0;
        for (int x = 0; x < 24; ++x) acc += v[x] * std::polar(1.0, -2.0 * M_PI * p * x / 24.0);
        EXPECT_NEAR(std::abs(acc / std::sqrt(24.0) - f[p]), 0.0, 1e-12);
    }
    EXPECT_NEAR(vec_norm(f), vec_norm(v), 1e-12);
    EXPECT_LT(l2(finite_fourier(f, FourierDirection::inverse), v), 1e-12);
}

TEST(fourier, empty_input_rejected) {
    EXPECT_THROW(finite_fourier({}, FourierDirection::forward), ShapeError);
}

TEST(packets, spec_pairing_and_validation) {
    const auto s = PacketSpec::from_delta_p(64, 10.5, 16.0);
    EXPECT_NEAR(2 * M_PI * s.delta_x * s.delta_p, 64.0, 1e-12);
    EXPECT_EQ(s.p0, 16);
    EXPECT_NEAR(PacketSpec::with_default_width(64, 0.0).delta_p, 16.0, 1e-12);
    auto bad = s;
    bad.delta_x *= 1.01;
    EXPECT_THROW(validate(bad, 64), ParameterError);
    EXPECT_NEAR(s.shifted(64, 60.0).x0, 6.5, 1e-12);
    EXPECT_NEAR(s.shifted(64, -11.0).x0, 63.5, 1e-12);
}

TEST(packets, position_form_matches_direct_definition) {
    const auto s = PacketSpec::from_delta_p(64, 10.5, 16.0);
    const auto w = make_packet(s, 64);
    EXPECT_LT(l2(w.amplitudes, position_oracle(64, 10.5, 16, s.delta_x, 3)), 1e-14);
}

TEST(packets, centered_packet_envelope_is_symmetric) {
    const auto w = make_packet(PacketSpec::from_delta_p(64, 0.0, 16.0), 64);
    for (int x = 1; x < 64; ++x) {
        EXPECT_NEAR(std::abs(w.amplitudes[x]), std::abs(w.amplitudes[64 - x]), 1e-14);
    }
}

TEST(packets, position_and_momentum_forms_agree) {
    for (int n : {32, 64, 128, 256}) {
        for (double x0 : {0.0, 10.5, 3.25}) {
            const auto s = PacketSpec::with_default_width(n, x0);
            const auto a = make_packet(s, n, PacketBasis::position);
            const auto b = make_packet(s, n, PacketBasis::momentum);
            EXPECT_LT(l2(a.amplitudes, b.amplitudes), 1e-8) << "N=" << n << " x0=" << x0;
        }
    }
}

TEST(packets, momentum_gaussian_without_wrap_phase_differs_for_fractional_center) {
    // Summing the momentum Gaussian over wrapped images l = p + alpha N with
    // the phase taken at p instead of l only reproduces the position packet
    // when x0 is an integer.
    const int n = 64;
    auto literal = [&](double x0) {
        const double dp = 16.0;
        std::vector<cplx> a(n);
        for (int p = 0; p < n; ++p) {
            cplx acc = 0.0;
            for (int alpha = -3; alpha <= 3; ++alpha) {
                const double l = p + alpha * n - 16;
                acc += std::exp(-l * l / (2.0 * dp * dp)) * std::polar(1.0, -2.0 * M_PI * (p - 16) * x0 / n);
            }
            a[p] = acc / std::sqrt(dp * std::sqrt(M_PI));
        }
        return finite_fourier(a, FourierDirection::inverse);
    };
    const auto s_int = PacketSpec::from_delta_p(n, 10.0, 16.0);
    const auto s_half = PacketSpec::from_delta_p(n, 10.5, 16.0);
    EXPECT_LT(l2(literal(10.0), make_packet(s_int, n).amplitudes), 1e-10);
    EXPECT_GT(l2(literal(10.5), make_packet(s_half, n).amplitudes), 0.1);
}

TEST(packets, norm_bounds_formula) {
    const auto [lo, hi] = packet_norm_bounds(PacketSpec::from_delta_p(64, 0.0, 16.0));
    EXPECT_NEAR(lo, 1.0 - 1.0 / (16.0 * std::sqrt(M_PI)), 1e-15);
    EXPECT_NEAR(hi, 1.0 + 1.0 / (16.0 * std::sqrt(M_PI)), 1e-15);
    EXPECT_NEAR(lo, 0.96474, 1e-5);
    const auto [lo2, hi2] = packet_norm_bounds(PacketSpec::from_delta_p(1 << 20, 0.0, 1e8));
    EXPECT_NEAR(lo2, 1.0, 1e-8);
    EXPECT_NEAR(hi2, 1.0, 1e-8);
}

TEST(packets, norm_deviation_follows_poisson_oracle) {
    // Poisson summation over the lattice:
    // ||A||^2 = 1 + 2 sum_{k>=1} exp(-pi^2 k^2 dx^2) cos(2 pi k x0).
    for (int n : {64, 128, 256}) {
        for (double x0 : {0.0, 0.25, 0.5}) {
            const auto s = PacketSpec::with_default_width(n, x0);
            const double nsq = std::pow(make_packet(s, n).norm(), 2);
            double oracle = 1.0;
            for (int k = 1; k <= 5; ++k) {
                oracle += 2.0 * std::exp(-M_PI * M_PI * k * k * s.delta_x * s.delta_x) * std::cos(2 * M_PI * k * x0);
            }
            EXPECT_NEAR(nsq, oracle, 1e-12) << n << " " << x0;
        }
    }
}

TEST(packets, norm_within_band_for_larger_rings) {
    for (int n : {128, 256, 512}) {
        for (double x0 : {0.0, 0.5, 17.3}) {
            const auto s = PacketSpec::with_default_width(n, x0);
            const auto [lo, hi] = packet_norm_bounds(s);
            const double nrm = make_packet(s, n).norm();
            EXPECT_GE(nrm, lo);
            EXPECT_LE(nrm, hi);
        }
    }
}

TEST(packets, wrap_truncation_is_negligible) {
    auto s = PacketSpec::with_default_width(64, 5.5);
    const auto a = make_packet(s, 64).amplitudes;
    s.wrap_cutoff = 4;
    EXPECT_LT(l2(a, make_packet(s, 64).amplitudes), 1e-13);
}

TEST(packets, tensor_encode_places_rails) {
    RingSystem sys(16, 2);
    const auto spec = PacketSpec::with_default_width(16, 3.0);
    const auto single = make_packet(spec, 16);
    const auto st = tensor_encode("01", spec, sys);
    for (std::size_t i = 0; i < sys.dim(); ++i) {
        const auto cfg = index_to_config(i, sys);
        const bool on = cfg.qubits[0].rail_bit == 0 && cfg.qubits[1].rail_bit == 1;
        const cplx expect = on ? single.amplitudes[cfg.qubits[0].site] * single.amplitudes[cfg.qubits[1].site] : 0.0;
        ASSERT_NEAR(std::abs(st[i] - expect), 0.0, 1e-15);
    }
    EXPECT_NEAR(st.norm(), std::pow(single.norm(), 2), 1e-12);
    EXPECT_EQ(std::abs(inner_product(tensor_encode("00", spec, sys), tensor_encode("11", spec, sys))), 0.0);
    EXPECT_LT(test_util::distance(tensor_encode(std::size_t{2}, spec, sys), st), 1e-15);
    EXPECT_THROW(tensor_encode("0", spec, sys), ShapeError);
    EXPECT_THROW(tensor_encode("0x", spec, sys), ParameterError);
}

TEST(packets, phase_aligned_distance_ignores_global_phase) {
    const auto v = test_util::random_vector(20, 3);
    auto w = v;
    for (auto &x : w) x *= std::polar(1.0, 1.234);
    EXPECT_LT(phase_aligned_distance(v, w), 1e-13);
}
