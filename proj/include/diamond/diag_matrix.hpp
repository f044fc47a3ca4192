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
 * @file diag_matrix.hpp
 * @brief Square sparse matrices stored as their nonzero diagonals (DiaQ).
 *
 * A diagonal at offset d = col - row holds exactly N - |d| values with no
 * padding. values[r] sits at row r + max(0, -d), column row + d. Every other
 * module relies on this indexing convention.
 */

#pragma once

#include <span>
#include <vector>

#include "diamond/types.hpp"

namespace diamond {

/// Length of the diagonal at offset d in an N x N matrix. Throws DomainError
/// when |d| >= N.
Index diag_length(Index n, Index d);

/// First row touched by diagonal d.
constexpr Index first_row(Index d) { return d < 0 ? -d : 0; }
/// First column touched by diagonal d.
constexpr Index first_col(Index d) { return d > 0 ? d : 0; }

struct Diagonal {
    Index offset = 0;
    std::vector<Scalar> values;

    bool operator==(const Diagonal&) const = default;
};

/// Row-major dense grid; only used for oracles, conversions and small I/O.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(Index rows, Index cols);
    static DenseMatrix identity(Index n);

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Scalar& operator()(Index i, Index j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
    const Scalar& operator()(Index i, Index j) const { return data_[static_cast<std::size_t>(i * cols_ + j)]; }

    std::span<const Scalar> data() const { return data_; }
    std::span<Scalar> data() { return data_; }

    bool operator==(const DenseMatrix&) const = default;

private:
    Index rows_ = 0;
    Index cols_ = 0;
    std::vector<Scalar> data_;
};

double frobenius_norm(const DenseMatrix& m);
/// ||a - b||_F / max(||b||_F, tiny). Throws ShapeError on mismatched shapes.
double relative_frobenius_error(const DenseMatrix& a, const DenseMatrix& b);

class DiagMatrix {
public:
    /// An empty (all-zero) matrix of dimension n >= 1.
    explicit DiagMatrix(Index n = 1);
    /// Validates offsets (strictly ascending, in range), lengths and
    /// finiteness. All-zero diagonals are accepted here; call
    /// drop_zero_diagonals() to normalize.
    DiagMatrix(Index n, std::vector<Diagonal> diagonals);

    static DiagMatrix identity(Index n);

    Index dim() const { return n_; }
    const std::vector<Diagonal>& diagonals() const { return diags_; }
    std::size_t nnzd() const { return diags_.size(); }
    std::vector<Index> offsets() const;

    /// nullptr when no diagonal is stored at that offset.
    const Diagonal* find(Index offset) const;

    /// Entry (i, j) without densifying. DomainError when out of range.
    Scalar get(Index i, Index j) const;

    /// Number of scalars stored, sum over diagonals of N - |d|.
    std::size_t stored_scalars() const;
    /// Number of stored values that are exactly nonzero.
    std::size_t nonzeros() const;
    double max_abs() const;

    bool operator==(const DiagMatrix&) const = default;

private:
    Index n_;
    std::vector<Diagonal> diags_;
};

DiagMatrix from_dense(const DenseMatrix& grid);
DiagMatrix from_dense(const std::vector<std::vector<Scalar>>& rows);
DenseMatrix to_dense(const DiagMatrix& m);

/// Remove diagonals whose largest magnitude is <= eps.
DiagMatrix drop_zero_diagonals(const DiagMatrix& m, double eps = 0.0);

/// Frobenius norm and ||a - b||_F / ||b||_F computed diagonal-wise.
double frobenius_norm(const DiagMatrix& m);
double relative_frobenius_error(const DiagMatrix& a, const DiagMatrix& b);

/// Maximum absolute column sum, computed diagonal-wise.
double one_norm(const DiagMatrix& m);

DiagMatrix scaled(const DiagMatrix& m, Scalar s);
/// a + s * b, offsets merged; exact-zero diagonals dropped.
DiagMatrix add_scaled(const DiagMatrix& a, const DiagMatrix& b, Scalar s = Scalar{1.0, 0.0});
DiagMatrix conj_transpose(const DiagMatrix& m);

/// Diagonal-wise Hermitian check: diagonal -d equals the conjugate of
/// diagonal +d element by element, within an absolute tolerance.
bool is_hermitian(const DiagMatrix& m, double tol = 0.0);

/// Round every stored component to the nearest float32 value.
DiagMatrix round_to_float32(const DiagMatrix& m);

}  // namespace diamond
