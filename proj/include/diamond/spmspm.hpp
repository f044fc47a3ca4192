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

/**
 * @file spmspm.hpp
 * @brief Timing-free diagonal SpMSpM and the dense reference product.
 *
 * The product of diagonal dA of A and diagonal dB of B lies entirely on
 * diagonal dA + dB of C. For a row r in overlap_range(dA, dB, N):
 *
 *   A(r, r+dA) * B(r+dA, r+dA+dB)  ->  C(r, r+dA+dB)
 */

#pragma once

#include <cstdint>
#include <set>

#include "diamond/diag_matrix.hpp"

namespace diamond {

using OffsetSet = std::set<Index>;

OffsetSet offset_set(const DiagMatrix& m);

/// { a + b : a in da, b in db }.
OffsetSet minkowski(const OffsetSet& da, const OffsetSet& db);

/// Inclusive row range [r_lo, r_hi]; empty when r_lo > r_hi.
struct OverlapRange {
    Index r_lo = 0;
    Index r_hi = -1;

    bool empty() const { return r_lo > r_hi; }
    Index size() const { return empty() ? 0 : r_hi - r_lo + 1; }
    bool operator==(const OverlapRange&) const = default;
};

OverlapRange overlap_range(Index da, Index db, Index n);

struct MatmulStats {
    std::uint64_t multiplies = 0;
    std::uint64_t pairs = 0;        // (dA, dB) pairs with a nonempty overlap
};

/// C = A * B in diagonal space. Contributions to every output element are
/// summed in ascending dA order, so results are bit-reproducible for any
/// thread count. Exact-zero output diagonals are dropped.
DiagMatrix diag_matmul(const DiagMatrix& a, const DiagMatrix& b, MatmulStats* stats = nullptr, int threads = 1);

/// Sum over (dA, dB) of |overlap_range|; the multiply count diag_matmul performs.
std::uint64_t count_multiplies(const DiagMatrix& a, const DiagMatrix& b);

/// Textbook triple loop.
DenseMatrix dense_matmul_oracle(const DenseMatrix& a, const DenseMatrix& b);

}  // namespace diamond
