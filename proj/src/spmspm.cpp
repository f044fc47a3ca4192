/*
 * Copyright 2026 The DIAMOND-sim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "diamond/spmspm.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>

#include "diamond/kernels.hpp"

namespace diamond {

OffsetSet offset_set(const DiagMatrix& m) {
    OffsetSet s;
    for (const Diagonal& d : m.diagonals()) s.insert(d.offset);
    return s;
}

OffsetSet minkowski(const OffsetSet& da, const OffsetSet& db) {
    OffsetSet out;
    for (Index a : da)
        for (Index b : db) out.insert(a + b);
    return out;
}

OverlapRange overlap_range(Index da, Index db, Index n) {
    const Index dc = da + db;
    OverlapRange r;
    r.r_lo = std::max({Index{0}, -da, -dc});
    r.r_hi = n - 1 - std::max({Index{0}, da, dc});
    return r;
}

std::uint64_t count_multiplies(const DiagMatrix& a, const DiagMatrix& b) {
    std::uint64_t total = 0;
    for (const Diagonal& x : a.diagonals())
        for (const Diagonal& y : b.diagonals()) total += static_cast<std::uint64_t>(overlap_range(x.offset, y.offset, a.dim()).size());
    return total;
}

namespace {

struct Contribution {
    const Diagonal* a;
    const Diagonal* b;
};

// Fill one output diagonal from its contributions, listed in ascending dA.
void accumulate_output(Index n, Index dc, const std::vector<Contribution>& parts, std::vector<Scalar>& out) {
    out.assign(static_cast<std::size_t>(n - (dc < 0 ? -dc : dc)), Scalar{});
    const Index c0 = first_row(dc);
    for (const Contribution& p : parts) {
        const Index da = p.a->offset, db = p.b->offset;
        const OverlapRange r = overlap_range(da, db, n);
        if (r.empty()) continue;
        const auto len = static_cast<std::size_t>(r.size());
        const Scalar* av = p.a->values.data() + (r.r_lo - first_row(da));
        const Scalar* bv = p.b->values.data() + (r.r_lo + da - first_row(db));
        Scalar* cv = out.data() + (r.r_lo - c0);
        kernels::hadamard_accumulate({cv, len}, {av, len}, {bv, len});
    }
}

}  // namespace

DiagMatrix diag_matmul(const DiagMatrix& a, const DiagMatrix& b, MatmulStats* stats, int threads) {
    if (a.dim() != b.dim()) throw ShapeError("diag_matmul: dimensions " + std::to_string(a.dim()) + " and " +
                                             std::to_string(b.dim()) + " differ");
    const Index n = a.dim();

    // Group pairs by output offset; a-major iteration keeps each list in ascending dA.
    std::map<Index, std::vector<Contribution>> by_output;
    MatmulStats local;
    for (const Diagonal& x : a.diagonals()) {
        for (const Diagonal& y : b.diagonals()) {
            const OverlapRange r = overlap_range(x.offset, y.offset, n);
            if (r.empty()) continue;
            by_output[x.offset + y.offset].push_back({&x, &y});
            local.multiplies += static_cast<std::uint64_t>(r.size());
            ++local.pairs;
        }
    }
    if (stats != nullptr) *stats = local;

    std::vector<Index> dcs;
    std::vector<const std::vector<Contribution>*> lists;
    for (const auto& [dc, parts] : by_output) {
        dcs.push_back(dc);
        lists.push_back(&parts);
    }
    std::vector<std::vector<Scalar>> outputs(dcs.size());

    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), dcs.size());
    if (workers <= 1) {
        for (std::size_t k = 0; k < dcs.size(); ++k) accumulate_output(n, dcs[k], *lists[k], outputs[k]);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t k = next++; k < dcs.size(); k = next++) accumulate_output(n, dcs[k], *lists[k], outputs[k]);
            });
        for (auto& t : pool) t.join();
    }

    std::vector<Diagonal> diags;
    diags.reserve(dcs.size());
    for (std::size_t k = 0; k < dcs.size(); ++k) diags.push_back(Diagonal{dcs[k], std::move(outputs[k])});
    return drop_zero_diagonals(DiagMatrix(n, std::move(diags)), 0.0);
}

DenseMatrix dense_matmul_oracle(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) throw ShapeError("dense_matmul_oracle: inner dimensions differ");
    DenseMatrix c(a.rows(), b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index k = 0; k < a.cols(); ++k) {
            const Scalar aik = a(i, k);
            if (aik == Scalar{}) continue;
            for (Index j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

}  // namespace diamond
