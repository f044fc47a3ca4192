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

#include "diamond/diag_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "diamond/kernels.hpp"

namespace diamond {

Index diag_length(Index n, Index d) {
    if (n < 1) throw DomainError("matrix dimension must be positive");
    const Index ad = d < 0 ? -d : d;
    if (ad >= n) throw DomainError("diagonal offset " + std::to_string(d) + " out of range for N=" + std::to_string(n));
    return n - ad;
}

// ---------------------------------------------------------------------------
// DenseMatrix
// ---------------------------------------------------------------------------

DenseMatrix::DenseMatrix(Index rows, Index cols)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols)) {
    if (rows < 0 || cols < 0) throw ShapeError("negative dense dimensions");
}

DenseMatrix DenseMatrix::identity(Index n) {
    DenseMatrix m(n, n);
    for (Index i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

double frobenius_norm(const DenseMatrix& m) {
    double s = 0.0;
    for (const Scalar& v : m.data()) s += std::norm(v);
    return std::sqrt(s);
}

double relative_frobenius_error(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("relative error of differently shaped matrices");
    double diff = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) diff += std::norm(a.data()[k] - b.data()[k]);
    const double ref = std::max(frobenius_norm(b), std::numeric_limits<double>::min());
    return std::sqrt(diff) / ref;
}

// ---------------------------------------------------------------------------
// DiagMatrix
// ---------------------------------------------------------------------------

DiagMatrix::DiagMatrix(Index n) : n_(n) {
    if (n < 1) throw DomainError("matrix dimension must be positive");
}

DiagMatrix::DiagMatrix(Index n, std::vector<Diagonal> diagonals) : n_(n), diags_(std::move(diagonals)) {
    if (n < 1) throw DomainError("matrix dimension must be positive");
    for (std::size_t k = 0; k < diags_.size(); ++k) {
        const Diagonal& d = diags_[k];
        const Index len = diag_length(n_, d.offset);
        if (k > 0 && diags_[k - 1].offset >= d.offset) throw DomainError("diagonal offsets must be strictly ascending");
        if (static_cast<Index>(d.values.size()) != len)
            throw DomainError("diagonal " + std::to_string(d.offset) + " holds " + std::to_string(d.values.size()) +
                              " values, expected " + std::to_string(len));
        for (const Scalar& v : d.values)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw DomainError("non-finite value on diagonal " + std::to_string(d.offset));
    }
}

DiagMatrix DiagMatrix::identity(Index n) {
    return DiagMatrix(n, {Diagonal{0, std::vector<Scalar>(static_cast<std::size_t>(n), Scalar{1.0, 0.0})}});
}

std::vector<Index> DiagMatrix::offsets() const {
    std::vector<Index> out;
    out.reserve(diags_.size());
    for (const Diagonal& d : diags_) out.push_back(d.offset);
    return out;
}

const Diagonal* DiagMatrix::find(Index offset) const {
    auto it = std::lower_bound(diags_.begin(), diags_.end(), offset,
                               [](const Diagonal& d, Index o) { return d.offset < o; });
    if (it == diags_.end() || it->offset != offset) return nullptr;
    return &*it;
}

Scalar DiagMatrix::get(Index i, Index j) const {
    if (i < 0 || j < 0 || i >= n_ || j >= n_)
        throw DomainError("index (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
    const Diagonal* d = find(j - i);
    if (d == nullptr) return {};
    return d->values[static_cast<std::size_t>(i - first_row(d->offset))];
}

std::size_t DiagMatrix::stored_scalars() const {
    std::size_t total = 0;
    for (const Diagonal& d : diags_) total += d.values.size();
    return total;
}

std::size_t DiagMatrix::nonzeros() const {
    std::size_t total = 0;
    for (const Diagonal& d : diags_)
        total += static_cast<std::size_t>(std::count_if(d.values.begin(), d.values.end(),
                                                        [](const Scalar& v) { return v != Scalar{}; }));
    return total;
}

double DiagMatrix::max_abs() const {
    double m = 0.0;
    for (const Diagonal& d : diags_) m = std::max(m, kernels::max_abs(d.values));
    return m;
}

// ---------------------------------------------------------------------------
// Conversions and algebra
// ---------------------------------------------------------------------------

DiagMatrix from_dense(const DenseMatrix& grid) {
    if (!grid.square()) throw ShapeError("from_dense requires a square grid");
    const Index n = grid.rows();
    std::vector<Diagonal> diags;
    for (Index d = -(n - 1); d <= n - 1; ++d) {
        const Index r0 = first_row(d);
        const Index len = n - (d < 0 ? -d : d);
        bool any = false;
        for (Index k = 0; k < len && !any; ++k) any = grid(r0 + k, r0 + k + d) != Scalar{};
        if (!any) continue;
        Diagonal diag{d, std::vector<Scalar>(static_cast<std::size_t>(len))};
        for (Index k = 0; k < len; ++k) diag.values[static_cast<std::size_t>(k)] = grid(r0 + k, r0 + k + d);
        diags.push_back(std::move(diag));
    }
    return DiagMatrix(n, std::move(diags));
}

DiagMatrix from_dense(const std::vector<std::vector<Scalar>>& rows) {
    const Index n = static_cast<Index>(rows.size());
    if (n == 0) throw ShapeError("empty grid");
    DenseMatrix grid(n, n);
    for (Index i = 0; i < n; ++i) {
        if (static_cast<Index>(rows[static_cast<std::size_t>(i)].size()) != n)
            throw ShapeError("from_dense requires a square grid");
        for (Index j = 0; j < n; ++j) grid(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return from_dense(grid);
}

DenseMatrix to_dense(const DiagMatrix& m) {
    DenseMatrix out(m.dim(), m.dim());
    for (const Diagonal& d : m.diagonals()) {
        const Index r0 = first_row(d.offset);
        for (std::size_t k = 0; k < d.values.size(); ++k) {
            const Index row = r0 + static_cast<Index>(k);
            out(row, row + d.offset) = d.values[k];
        }
    }
    return out;
}

DiagMatrix drop_zero_diagonals(const DiagMatrix& m, double eps) {
    if (eps < 0.0) throw DomainError("eps must be non-negative");
    std::vector<Diagonal> kept;
    kept.reserve(m.nnzd());
    for (const Diagonal& d : m.diagonals())
        if (kernels::max_abs(d.values) > eps) kept.push_back(d);
    return DiagMatrix(m.dim(), std::move(kept));
}

double frobenius_norm(const DiagMatrix& m) {
    double s = 0.0;
    for (const Diagonal& d : m.diagonals())
        for (const Scalar& v : d.values) s += std::norm(v);
    return std::sqrt(s);
}

double relative_frobenius_error(const DiagMatrix& a, const DiagMatrix& b) {
    if (a.dim() != b.dim()) throw ShapeError("relative error of matrices with different dimensions");
    const double ref = std::max(frobenius_norm(b), std::numeric_limits<double>::min());
    return frobenius_norm(add_scaled(a, b, Scalar{-1.0, 0.0})) / ref;
}

double one_norm(const DiagMatrix& m) {
    std::vector<double> colsum(static_cast<std::size_t>(m.dim()), 0.0);
    for (const Diagonal& d : m.diagonals()) {
        // values[k] lives in column first_col(d) + k
        kernels::abs_accumulate(std::span<double>(colsum).subspan(static_cast<std::size_t>(first_col(d.offset))),
                                d.values);
    }
    return colsum.empty() ? 0.0 : *std::max_element(colsum.begin(), colsum.end());
}

DiagMatrix scaled(const DiagMatrix& m, Scalar s) {
    std::vector<Diagonal> diags = m.diagonals();
    for (Diagonal& d : diags) kernels::scale(d.values, s);
    return DiagMatrix(m.dim(), std::move(diags));
}

DiagMatrix add_scaled(const DiagMatrix& a, const DiagMatrix& b, Scalar s) {
    if (a.dim() != b.dim()) throw ShapeError("add of matrices with different dimensions");
    std::vector<Diagonal> out;
    out.reserve(a.nnzd() + b.nnzd());
    auto ia = a.diagonals().begin();
    auto ib = b.diagonals().begin();
    while (ia != a.diagonals().end() || ib != b.diagonals().end()) {
        if (ib == b.diagonals().end() || (ia != a.diagonals().end() && ia->offset < ib->offset)) {
            out.push_back(*ia++);
        } else if (ia == a.diagonals().end() || ib->offset < ia->offset) {
            Diagonal d{ib->offset, std::vector<Scalar>(ib->values.size())};
            kernels::axpy(d.values, s, ib->values);
            out.push_back(std::move(d));
            ++ib;
        } else {
            Diagonal d = *ia++;
            kernels::axpy(d.values, s, ib->values);
            ++ib;
            out.push_back(std::move(d));
        }
    }
    return drop_zero_diagonals(DiagMatrix(a.dim(), std::move(out)), 0.0);
}

DiagMatrix conj_transpose(const DiagMatrix& m) {
    std::vector<Diagonal> out;
    out.reserve(m.nnzd());
    // (M^H)[j][i] = conj(M[i][j]); diagonal d maps to -d with the same element order.
    for (auto it = m.diagonals().rbegin(); it != m.diagonals().rend(); ++it) {
        Diagonal d{-it->offset, it->values};
        for (Scalar& v : d.values) v = std::conj(v);
        out.push_back(std::move(d));
    }
    return DiagMatrix(m.dim(), std::move(out));
}

bool is_hermitian(const DiagMatrix& m, double tol) {
    for (const Diagonal& d : m.diagonals()) {
        const Diagonal* mirror = m.find(-d.offset);
        if (mirror == nullptr) {
            if (kernels::max_abs(d.values) > tol) return false;
            continue;
        }
        for (std::size_t k = 0; k < d.values.size(); ++k)
            if (std::abs(d.values[k] - std::conj(mirror->values[k])) > tol) return false;
    }
    return true;
}

DiagMatrix round_to_float32(const DiagMatrix& m) {
    std::vector<Diagonal> diags = m.diagonals();
    for (Diagonal& d : diags) {
        double* parts = reinterpret_cast<double*>(d.values.data());
        for (std::size_t k = 0; k < 2 * d.values.size(); ++k) parts[k] = static_cast<float>(parts[k]);
    }
    return DiagMatrix(m.dim(), std::move(diags));
}

}  // namespace diamond
