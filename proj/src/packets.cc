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

#include <cmath>
#include <numbers>
#include <string>

#include "spinring/error.h"

namespace spinring {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_real(double x, int n) {
    double r = std::fmod(x, static_cast<double>(n));
    if (r < 0) r += n;
    // fmod can land exactly on n after the correction for tiny negatives.
    return r >= n ? 0.0 : r;
}

}  // namespace

PacketSpec PacketSpec::from_delta_p(int sites, double x0, double delta_p, int wrap_cutoff) {
    PacketSpec s;
    s.x0 = wrap_real(x0, sites);
    s.p0 = sites / 4;
    s.delta_p = delta_p;
    s.delta_x = sites / (2.0 * kPi * delta_p);
    s.wrap_cutoff = wrap_cutoff;
    validate(s, sites);
    return s;
}

PacketSpec PacketSpec::from_delta_x(int sites, double x0, double delta_x, int wrap_cutoff) {
    PacketSpec s;
    s.x0 = wrap_real(x0, sites);
    s.p0 = sites / 4;
    s.delta_x = delta_x;
    s.delta_p = sites / (2.0 * kPi * delta_x);
    s.wrap_cutoff = wrap_cutoff;
    validate(s, sites);
    return s;
}

PacketSpec PacketSpec::with_default_width(int sites, double x0) {
    return from_delta_p(sites, x0, std::pow(static_cast<double>(sites), 2.0 / 3.0));
}

PacketSpec PacketSpec::shifted(int sites, double shift) const {
    PacketSpec s = *this;
    s.x0 = wrap_real(x0 + shift, sites);
    return s;
}

void validate(const PacketSpec &spec, int sites) {
    if (sites < 1) throw ParameterError("ring must have at least one site");
    if (!(spec.delta_p > 0) || !(spec.delta_x > 0) || !std::isfinite(spec.delta_p) ||
        !std::isfinite(spec.delta_x)) {
        throw ParameterError("packet widths must be positive and finite");
    }
    const double pairing = 2.0 * kPi * spec.delta_x * spec.delta_p;
    if (std::abs(pairing - sites) > 1e-12 * sites) {
        throw ParameterError("packet widths violate 2*pi*dx*dp = N: got " + std::to_string(pairing) +
                             " for N = " + std::to_string(sites));
    }
    if (!std::isfinite(spec.x0) || spec.x0 < 0 || spec.x0 >= sites) {
        throw ParameterError("packet center must lie in [0, N)");
    }
    if (spec.wrap_cutoff < 0) throw ParameterError("wrap cutoff must be non-negative");
}

double RailWave::norm() const {
    double acc = 0.0;
    for (const auto &a : amplitudes) acc += std::norm(a);
    return std::sqrt(acc);
}

std::vector<cplx> finite_fourier(std::span<const cplx> values, FourierDirection direction) {
    const std::size_t n = values.size();
    if (n == 0) throw ShapeError("finite Fourier transform of an empty sequence");
    const double sign = direction == FourierDirection::forward ? -1.0 : 1.0;
    // Twiddles indexed by (p * x) mod N keep the phases exact for large p * x.
    std::vector<cplx> twiddle(n);
    for (std::size_t k = 0; k < n; ++k) {
        twiddle[k] = std::polar(1.0, sign * 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n));
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<cplx> out(n);
    for (std::size_t p = 0; p < n; ++p) {
        cplx acc = 0.0;
        std::size_t k = 0;
        for (std::size_t x = 0; x < n; ++x) {
            acc += values[x] * twiddle[k];
            k += p;
            if (k >= n) k -= n;
        }
        out[p] = acc * scale;
    }
    return out;
}

std::vector<cplx> packet_momentum_coefficients(const PacketSpec &spec, int sites) {
    validate(spec, sites);
    const double n = sites;
    const double norm = 1.0 / std::sqrt(spec.delta_p * std::sqrt(kPi));
    const double two_dp2 = 2.0 * spec.delta_p * spec.delta_p;
    const cplx carrier = std::polar(1.0, 2.0 * kPi * spec.p0 * spec.x0 / n);
    std::vector<cplx> a(sites);
    for (int p = 0; p < sites; ++p) {
        cplx acc = 0.0;
        for (int alpha = -spec.wrap_cutoff; alpha <= spec.wrap_cutoff; ++alpha) {
            const double l = static_cast<double>(alpha) * n + p;
            const double envelope = std::exp(-(l - spec.p0) * (l - spec.p0) / two_dp2);
            // exp(-2 pi i l x0 / N) with l unwrapped carries the wrap phase.
            const double phase = -2.0 * kPi * std::fmod(l * spec.x0, n) / n;
            acc += envelope * std::polar(1.0, phase);
        }
        a[p] = norm * carrier * acc;
    }
    return a;
}

RailWave make_packet(const PacketSpec &spec, int sites, PacketBasis basis) {
    validate(spec, sites);
    RailWave wave;
    if (basis == PacketBasis::momentum) {
        wave.amplitudes = finite_fourier(packet_momentum_coefficients(spec, sites), FourierDirection::inverse);
        return wave;
    }
    const double n = sites;
    const double norm = 1.0 / std::sqrt(spec.delta_x * std::sqrt(kPi));
    const double two_dx2 = 2.0 * spec.delta_x * spec.delta_x;
    wave.amplitudes.resize(sites);
    for (int x = 0; x < sites; ++x) {
        double envelope = 0.0;
        for (int alpha = -spec.wrap_cutoff; alpha <= spec.wrap_cutoff; ++alpha) {
            const double u = alpha * n + x - spec.x0;
            envelope += std::exp(-u * u / two_dx2);
        }
        // p0 * x is an integer, reduce it before forming the phase.
        const double phase = 2.0 * kPi * static_cast<double>((static_cast<long long>(spec.p0) * x) % sites) / n;
        wave.amplitudes[x] = norm * envelope * std::polar(1.0, phase);
    }
    return wave;
}

std::pair<double, double> packet_norm_bounds(const PacketSpec &spec) {
    const double band = 1.0 / (spec.delta_p * std::sqrt(kPi));
    return {1.0 - band, 1.0 + band};
}

StateVector tensor_encode(std::span<const RailWave> waves, std::span<const int> rail_bits,
                          const RingSystem &sys) {
    const int m = sys.qubits();
    const int n = sys.sites();
    if (static_cast<int>(waves.size()) != m || static_cast<int>(rail_bits.size()) != m) {
        throw ShapeError("need one wave and one rail bit per qubit");
    }
    for (const auto &w : waves) {
        if (static_cast<int>(w.amplitudes.size()) != n) throw ShapeError("rail wave length must be N");
    }
    StateVector state(sys);
    // Enumerate site tuples; the rail bits are fixed.
    std::size_t rail_offset = 0;
    for (int b = 0; b < m; ++b) {
        if (rail_bits[b] != 0 && rail_bits[b] != 1) throw RangeError("rail bit must be 0 or 1");
        rail_offset += static_cast<std::size_t>(rail_bits[b] * n) * sys.stride(b);
    }
    std::vector<int> sites(m, 0);
    std::size_t tuples = 1;
    for (int b = 0; b < m; ++b) tuples *= static_cast<std::size_t>(n);
    for (std::size_t t = 0; t < tuples; ++t) {
        std::size_t rest = t;
        std::size_t index = rail_offset;
        cplx amp = 1.0;
        for (int b = 0; b < m; ++b) {
            const auto s = rest % static_cast<std::size_t>(n);
            rest /= static_cast<std::size_t>(n);
            index += s * sys.stride(b);
            amp *= waves[b].amplitudes[s];
        }
        state[index] = amp;
    }
    return state;
}

StateVector tensor_encode(std::string_view bits, const PacketSpec &spec, const RingSystem &sys,
                          PacketBasis basis) {
    if (static_cast<int>(bits.size()) != sys.qubits()) {
        throw ShapeError("bit string has length " + std::to_string(bits.size()) + ", expected " +
                         std::to_string(sys.qubits()));
    }
    std::vector<int> rail_bits;
    for (char c : bits) {
        if (c != '0' && c != '1') throw ParameterError("bit string may only contain 0 and 1");
        rail_bits.push_back(c - '0');
    }
    const RailWave wave = make_packet(spec, sys.sites(), basis);
    const std::vector<RailWave> waves(sys.qubits(), wave);
    return tensor_encode(waves, rail_bits, sys);
}

StateVector tensor_encode(std::size_t logical, const PacketSpec &spec, const RingSystem &sys,
                          PacketBasis basis) {
    if (logical >= (std::size_t{1} << sys.qubits())) throw RangeError("logical index out of range");
    std::string bits;
    for (int b = 0; b < sys.qubits(); ++b) bits.push_back(((logical >> b) & 1) ? '1' : '0');
    return tensor_encode(bits, spec, sys, basis);
}

double phase_aligned_distance(std::span<const cplx> u, std::span<const cplx> v) {
    if (u.size() != v.size()) throw ShapeError("phase alignment needs equal lengths");
    std::size_t k = 0;
    for (std::size_t i = 1; i < u.size(); ++i) {
        if (std::abs(u[i]) > std::abs(u[k])) k = i;
    }
    cplx phase = 1.0;
    if (std::abs(u[k]) > 0 && std::abs(v[k]) > 0) {
        phase = (u[k] / v[k]) / std::abs(u[k] / v[k]);
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) acc += std::norm(u[i] - phase * v[i]);
    return std::sqrt(acc);
}

}  // namespace spinring
