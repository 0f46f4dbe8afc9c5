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

#ifndef SPINRING_PACKETS_H
#define SPINRING_PACKETS_H

#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "spinring/lattice.h"

namespace spinring {

/// Parameters of an N-periodic Gaussian packet.
///
/// The widths are paired, 2*pi*delta_x*delta_p = N, so the same packet can be
/// written as a Gaussian in position or in momentum. Use the factories to
/// keep the pairing exact.
struct PacketSpec {
    double x0 = 0.0;
    int p0 = 0;
    double delta_p = 1.0;
    double delta_x = 1.0;
    int wrap_cutoff = 3;

    static PacketSpec from_delta_p(int sites, double x0, double delta_p, int wrap_cutoff = 3);
    static PacketSpec from_delta_x(int sites, double x0, double delta_x, int wrap_cutoff = 3);
    /// delta_p = N^{2/3}.
    static PacketSpec with_default_width(int sites, double x0);

    /// Same packet with its center moved by `shift` (mod N).
    PacketSpec shifted(int sites, double shift) const;
};

/// Throws ParameterError if the spec is not a valid packet on an N-site ring.
void validate(const PacketSpec &spec, int sites);

/// Single-excitation amplitudes on one rail.
struct RailWave {
    std::vector<cplx> amplitudes;
    double norm() const;
};

enum class FourierDirection { forward, inverse };
enum class PacketBasis { position, momentum };

/// Unitary finite Fourier transform,
/// forward a_p = N^{-1/2} sum_x A_x exp(-2 pi i p x / N).
std::vector<cplx> finite_fourier(std::span<const cplx> values, FourierDirection direction);

/// Momentum-space coefficients a_p of a packet, including the wrap phase
/// exp(-2 pi i alpha x0) and the carrier phase exp(2 pi i p0 x0 / N), so
/// that the inverse transform reproduces the position form exactly up to
/// the truncated wrap terms.
std::vector<cplx> packet_momentum_coefficients(const PacketSpec &spec, int sites);

/// Builds the packet on one rail. The position form samples the wrapped
/// Gaussian directly; the momentum form samples it in momentum space and
/// transforms back.
RailWave make_packet(const PacketSpec &spec, int sites, PacketBasis basis = PacketBasis::position);

/// 1 -/+ 1/(delta_p sqrt(pi)).
std::pair<double, double> packet_norm_bounds(const PacketSpec &spec);

/// Product state with one packet per qubit on rail bits[b] and vacuum on the
/// partner rail. bits[b] is qubit b, so "01" puts qubit 0 on its 0-rail and
/// qubit 1 on its 1-rail.
StateVector tensor_encode(std::string_view bits, const PacketSpec &spec, const RingSystem &sys,
                          PacketBasis basis = PacketBasis::position);

/// Same, with the rail bits given as the bits of a logical basis index
/// (bit b of `logical` is qubit b).
StateVector tensor_encode(std::size_t logical, const PacketSpec &spec, const RingSystem &sys,
                          PacketBasis basis = PacketBasis::position);

/// Embeds one rail wave per qubit on the given rail bits.
StateVector tensor_encode(std::span<const RailWave> waves, std::span<const int> rail_bits,
                          const RingSystem &sys);

/// ||u - e^{i phi} v|| with phi chosen from the largest-magnitude entry of u.
double phase_aligned_distance(std::span<const cplx> u, std::span<const cplx> v);

}  // namespace spinring

#endif
