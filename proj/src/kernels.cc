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

#include "spinring/kernels.h"

#include <algorithm>
#include <cassert>

namespace spinring::kernels {

namespace {

std::size_t block_count(std::size_t n) { return (n + kReductionBlock - 1) / kReductionBlock; }

cplx dot_block(const cplx *a, const cplx *b, std::size_t begin, std::size_t end) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

template <typename BlockFn>
cplx blocked_sum(std::size_t n, Exec exec, BlockFn fn) {
    const std::size_t blocks = block_count(n);
    std::vector<cplx> partial(blocks);
    const auto nb = static_cast<long long>(blocks);
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long long k = 0; k < nb; ++k) {
            const std::size_t begin = static_cast<std::size_t>(k) * kReductionBlock;
            partial[k] = fn(begin, std::min(n, begin + kReductionBlock));
        }
    } else {
        for (long long k = 0; k < nb; ++k) {
            const std::size_t begin = static_cast<std::size_t>(k) * kReductionBlock;
            partial[k] = fn(begin, std::min(n, begin + kReductionBlock));
        }
    }
    cplx total = 0.0;
    for (const auto &p : partial) total += p;
    return total;
}

struct RowContext {
    const OperatorTables &op;
    std::vector<std::size_t> strides;
    std::size_t local;
};

// One row of H x. Shared by the serial and parallel loops.
inline cplx apply_row(const RowContext &ctx, const cplx *x, std::size_t i) {
    const OperatorTables &op = ctx.op;
    const std::size_t n = static_cast<std::size_t>(op.sites);
    double diag = 0.0;
    cplx acc = 0.0;
    // Local coordinates are needed for the pair terms; m is small.
    std::size_t locals[8];
    for (int b = 0; b < op.qubits; ++b) {
        const std::size_t stride = ctx.strides[b];
        const std::size_t l = (i / stride) % ctx.local;
        locals[b] = l;
        const std::size_t rail = l / n;
        const std::size_t site = l - rail * n;
        diag += op.onsite[b][l];
        if (op.hopping != 0.0) {
            const std::size_t up = site + 1 == n ? 0 : site + 1;
            const std::size_t down = site == 0 ? n - 1 : site - 1;
            const std::size_t base = i - site * stride;
            acc += op.hopping * (x[base + up * stride] + x[base + down * stride]);
        }
        const double r = op.rung[b][site];
        if (r != 0.0) {
            const std::size_t partner = rail == 0 ? i + n * stride : i - n * stride;
            acc += r * x[partner];
        }
    }
    for (const auto &pair : op.pairs) {
        const std::size_t l1 = locals[pair.q1];
        const std::size_t l2 = locals[pair.q2];
        if (l1 >= n && l2 >= n) diag += pair.values[(l1 - n) * n + (l2 - n)];
    }
    return acc + diag * x[i];
}

}  // namespace

cplx dot(std::span<const cplx> a, std::span<const cplx> b, Exec exec) {
    assert(a.size() == b.size());
    return blocked_sum(a.size(), exec, [&](std::size_t s, std::size_t e) {
        return dot_block(a.data(), b.data(), s, e);
    });
}

double norm_sq(std::span<const cplx> a, Exec exec) {
    return blocked_sum(a.size(), exec, [&](std::size_t s, std::size_t e) {
               double acc = 0.0;
               for (std::size_t i = s; i < e; ++i) acc += std::norm(a[i]);
               return cplx(acc, 0.0);
           }).real();
}

void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y, Exec exec) {
    assert(x.size() == y.size());
    const auto n = static_cast<long long>(x.size());
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < n; ++i) y[i] += alpha * x[i];
    } else {
        for (long long i = 0; i < n; ++i) y[i] += alpha * x[i];
    }
}

void combine(cplx alpha, std::span<const cplx> a, cplx beta, std::span<const cplx> b,
             std::span<cplx> out, Exec exec) {
    assert(a.size() == b.size() && a.size() == out.size());
    const auto n = static_cast<long long>(a.size());
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < n; ++i) out[i] = alpha * a[i] + beta * b[i];
    } else {
        for (long long i = 0; i < n; ++i) out[i] = alpha * a[i] + beta * b[i];
    }
}

void apply(const OperatorTables &op, std::span<const cplx> x, std::span<cplx> y, Exec exec) {
    assert(x.size() == y.size());
    assert(op.qubits <= 8);
    RowContext ctx{op, {}, static_cast<std::size_t>(2 * op.sites)};
    std::size_t stride = 1;
    for (int b = 0; b < op.qubits; ++b) {
        ctx.strides.push_back(stride);
        stride *= ctx.local;
    }
    const auto n = static_cast<long long>(x.size());
    const cplx *xs = x.data();
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < n; ++i) y[i] = apply_row(ctx, xs, static_cast<std::size_t>(i));
    } else {
        for (long long i = 0; i < n; ++i) y[i] = apply_row(ctx, xs, static_cast<std::size_t>(i));
    }
}

void circulant(std::span<const cplx> kernel, int sites, std::size_t stride, std::span<const cplx> x,
               std::span<cplx> y, Exec exec) {
    assert(x.size() == y.size());
    assert(kernel.size() == static_cast<std::size_t>(sites));
    const std::size_t n = static_cast<std::size_t>(sites);
    const std::size_t local = 2 * n;
    const auto total = static_cast<long long>(x.size());
    auto row = [&](std::size_t i) {
        const std::size_t site = ((i / stride) % local) % n;
        const std::size_t base = i - site * stride;
        cplx acc = 0.0;
        std::size_t k = site;  // (site - s') mod N, starting at s' = 0
        for (std::size_t sp = 0; sp < n; ++sp) {
            acc += kernel[k] * x[base + sp * stride];
            k = k == 0 ? n - 1 : k - 1;
        }
        return acc;
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < total; ++i) y[i] = row(static_cast<std::size_t>(i));
    } else {
        for (long long i = 0; i < total; ++i) y[i] = row(static_cast<std::size_t>(i));
    }
}

}  // namespace spinring::kernels
