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

#include <gtest/gtest.h>

#include <algorithm>

#include "spinring/error.h"
#include "spinring/packets.h"
#include "test_util.h"

using namespace spinring;

namespace {

int peak_site(const StateVector &s) {
    const int n = s.system().sites();
    std::vector<double> weight(n, 0.0);
    for (std::size_t i = 0; i < s.size(); ++i) weight[index_to_config(i, s.system()).qubits[0].site] += std::norm(s[i]);
    return static_cast<int>(std::max_element(weight.begin(), weight.end()) - weight.begin());
}

}  // namespace

TEST(propagate, zero_time_is_identity) {
    RingSystem sys(8, 2);
    const auto h = build_ring(sys);
    const auto s = test_util::random_state(sys, 1);
    EXPECT_EQ(test_util::distance(evolve(s, h, 0.0), s), 0.0);
}

TEST(propagate, momentum_eigenstate_gets_global_phase) {
    RingSystem sys(16, 1);
    StateVector v(sys);
    const auto mode = test_util::momentum_mode(16, 3);
    for (int x = 0; x < 16; ++x) v[x] = mode[x];
    const double e = 2.0 * std::cos(2.0 * M_PI * 3 / 16.0);
    const double t = 7.3;
    EXPECT_LT(test_util::distance(evolve(v, build_ring(sys), t), std::polar(1.0, -e * t) * v), 1e-10);
}

TEST(propagate, iterative_matches_dense_oracle) {
    const std::vector<std::pair<int, int>> shapes{{16, 1}, {32, 1}, {8, 2}, {16, 2}};
    std::uint64_t seed = 10;
    for (auto [n, m] : shapes) {
        RingSystem sys(n, m);
        const std::vector<GateRegion> regions{{GateKind::Z, {0}, 1, n / 2, 0.4, 1},
                                              {GateKind::X, {m - 1}, n / 2, n / 4, -0.3, 1}};
        const auto h = assemble(regions, sys);
        const DensePropagator dense(h);
        for (double t : {0.3, 4.0, 23.5}) {
            const auto s = test_util::random_state(sys, ++seed);
            const double err = test_util::distance(evolve(s, h, t), dense.evolve(s, t));
            EXPECT_LT(err, 1e-9) << n << "x" << m << " t=" << t;
        }
    }
}

TEST(propagate, evolution_is_unitary) {
    RingSystem sys(16, 2);
    const std::vector<GateRegion> regions{{GateKind::CPHASE, {0, 1}, 0, 8, 1.2, 2}};
    const auto h = assemble(regions, sys);
    const auto u = test_util::random_state(sys, 2);
    const auto v = test_util::random_state(sys, 3);
    const auto uu = evolve(u, h, 11.0);
    const auto vv = evolve(v, h, 11.0);
    EXPECT_NEAR(uu.norm(), 1.0, 1e-10);
    EXPECT_NEAR(std::abs(inner_product(uu, vv) - inner_product(u, v)), 0.0, 1e-10);
    EXPECT_LT(test_util::distance(evolve(uu, h, -11.0), u), 1e-9);
}

TEST(propagate, term_budget_is_enforced) {
    RingSystem sys(8, 1);
    PropagatorConfig cfg;
    cfg.max_terms = 3;
    EXPECT_THROW(evolve(test_util::random_state(sys, 1), build_ring(sys), 5.0, cfg), PropagationError);
}

TEST(propagate, packets_move_toward_decreasing_sites) {
    const int n = 64;
    RingSystem sys(n, 1);
    const double x0 = 40.0;
    const auto spec = PacketSpec::from_delta_x(n, x0, std::cbrt(n));
    const auto s = tensor_encode("0", spec, sys);
    const double t = 6.0;
    const auto out = evolve(s, build_ring(sys), t);
    EXPECT_NEAR(peak_site(out), x0 + kPropagationDirection * kGroupSpeed * t, 1.0);
    EXPECT_EQ(kPropagationDirection, -1);
}

TEST(propagate, translation_matches_shifted_packet) {
    const int n = 64;
    RingSystem sys(n, 2);
    const auto spec = PacketSpec::with_default_width(n, 10.0);
    const auto s = tensor_encode("10", spec, sys);
    EXPECT_LT(test_util::distance(ideal_translate(s, n), s), 1e-12);
    EXPECT_LT(test_util::distance(ideal_translate(ideal_translate(s, 7.25), -7.25), s), 1e-12);
    for (double shift : {2.0, -13.0, 31.0}) {
        const auto moved = tensor_encode("10", spec.shifted(n, shift), sys);
        EXPECT_LT(test_util::distance(ideal_translate(s, shift), moved), 1e-12) << shift;
    }
    // Fractional shifts are exact once the momentum Gaussian fits inside
    // the window around p0.
    const auto wide = PacketSpec::from_delta_x(n, 10.0, std::cbrt(n));
    const auto w = tensor_encode("01", wide, sys);
    for (double shift : {2.5, -13.25, 30.75}) {
        const auto moved = tensor_encode("01", wide.shifted(n, shift), sys);
        EXPECT_LT(test_util::distance(ideal_translate(w, shift), moved), 1e-12) << shift;
    }
    EXPECT_NEAR(ideal_translate(s, 3.3).norm(), s.norm(), 1e-12);
}

TEST(propagate, ring_evolution_is_near_ideal_translation) {
    const int n = 64;
    RingSystem sys(n, 1);
    const auto spec = PacketSpec::from_delta_x(n, 20.0, std::cbrt(n));
    const auto s = tensor_encode("1", spec, sys);
    const double t = 4.0;
    const double err = test_util::distance(evolve(s, build_ring(sys), t), ideal_translate(s, -2.0 * t));
    EXPECT_LT(err, 0.05);
}

TEST(propagate, extended_gate_factorizes_exactly) {
    // Extended gates commute with the ring, so exp(-i(H + G)t) equals the
    // ring evolution followed by the logical phases.
    const int n = 16;
    RingSystem sys(n, 2);
    const double phi = 0.45, t = 3.1;
    const std::vector<GateRegion> block{{GateKind::Z, {0}, 0, n, phi, 1}, {GateKind::CPHASE, {0, 1}, 0, n, -phi, n / 2}};
    auto h = build_ring(sys);
    for (const auto &g : block) h += build_gate(g, sys, true);
    const auto s = test_util::random_state(sys, 5);
    const auto lhs = evolve(s, h, t);
    const auto rhs = apply_block_phases(evolve(s, build_ring(sys), t), block, t);
    EXPECT_LT(test_util::distance(lhs, rhs), 1e-9);
}

TEST(propagate, block_phases_follow_gate_conventions) {
    RingSystem sys(16, 1);
    const auto spec = PacketSpec::with_default_width(16, 3.0);
    const auto zero = tensor_encode("0", spec, sys);
    const auto one = tensor_encode("1", spec, sys);
    const double phi = 0.8, t = 1.3;
    const std::vector<GateRegion> z{{GateKind::Z, {0}, 0, 4, phi, 1}};
    EXPECT_LT(test_util::distance(apply_block_phases(zero, z, t), zero), 1e-15);
    EXPECT_LT(test_util::distance(apply_block_phases(one, z, t), std::polar(1.0, -phi * t) * one), 1e-15);
    const std::vector<GateRegion> x{{GateKind::X, {0}, 0, 4, phi, 1}};
    const auto expect = std::cos(phi * t) * zero + cplx(0, -std::sin(phi * t)) * one;
    EXPECT_LT(test_util::distance(apply_block_phases(zero, x, t), expect), 1e-14);
    EXPECT_LT(test_util::distance(ideal_gate_unitary(zero, {}, 2.0), ideal_translate(zero, -4.0)), 1e-15);
}
