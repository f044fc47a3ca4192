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


#include <doctest.h>

#include <random>

#include "diamond/pauli.hpp"
#include "diamond/spmspm.hpp"
#include "test_util.hpp"

using namespace diamond;
using diamond::testing::corner_matrix;

namespace {

// Kronecker product of single-qubit matrices, qubit 0 least significant.
DenseMatrix kron_term(const PauliTerm& t) {
    const int n = static_cast<int>(t.axes.size());
    const Index dim = Index{1} << n;
    auto entry = [](Pauli p, int r, int c) -> Scalar {
        switch (p) {
        case Pauli::I:
            return r == c ? 1.0 : 0.0;
        case Pauli::X:
            return r != c ? 1.0 : 0.0;
        case Pauli::Y:
            return r == c ? Scalar{} : (r == 0 ? Scalar{0, -1} : Scalar{0, 1});
        case Pauli::Z:
            return r == c ? (r == 0 ? 1.0 : -1.0) : 0.0;
        }
        return {};
    };
    DenseMatrix m(dim, dim);
    for (Index r = 0; r < dim; ++r)
        for (Index c = 0; c < dim; ++c) {
            Scalar v = t.coefficient;
            for (int q = 0; q < n; ++q) v *= entry(t.axes[static_cast<std::size_t>(q)], (r >> q) & 1, (c >> q) & 1);
            m(r, c) = v;
        }
    return m;
}

DenseMatrix kron_sum(const std::vector<PauliTerm>& terms, int n) {
    DenseMatrix m(Index{1} << n, Index{1} << n);
    for (const PauliTerm& t : terms) {
        const DenseMatrix k = kron_term(t);
        for (std::size_t e = 0; e < m.data().size(); ++e) m.data()[e] += k.data()[e];
    }
    return m;
}

double dense_one_norm(const DenseMatrix& m) {
    double best = 0.0;
    for (Index j = 0; j < m.cols(); ++j) {
        double s = 0.0;
        for (Index i = 0; i < m.rows(); ++i) s += std::abs(m(i, j));
        best = std::max(best, s);
    }
    return best;
}

}  // namespace

TEST_CASE("diag_length") {
    CHECK(diag_length(1024, 3) == 1021);
    CHECK(diag_length(1024, -3) == 1021);
    CHECK(diag_length(5, 0) == 5);
    CHECK(diag_length(4, -3) == 1);
    CHECK_THROWS_AS(diag_length(4, 4), DomainError);
    CHECK_THROWS_AS(diag_length(4, -4), DomainError);
}

TEST_CASE("from_dense on the figure-one matrix") {
    const Scalar a{1}, b{2}, c{3}, d{4}, e{5}, f{6};
    DenseMatrix g(4, 4);
    g(0, 0) = a;
    g(0, 3) = b;
    g(1, 1) = c;
    g(2, 2) = d;
    g(3, 0) = e;
    g(3, 3) = f;
    const DiagMatrix m = from_dense(g);
    CHECK(m.offsets() == std::vector<Index>{-3, 0, 3});
    CHECK(m.diagonals()[0].values == std::vector<Scalar>{e});
    CHECK(m.diagonals()[1].values == std::vector<Scalar>{a, c, d, f});
    CHECK(m.diagonals()[2].values == std::vector<Scalar>{b});
    CHECK(m == corner_matrix(a, b, c, d, e, f));
    CHECK(to_dense(m) == g);
    CHECK(m.get(3, 0) == e);
    CHECK(m.get(1, 0) == Scalar{});
    CHECK_THROWS_AS(m.get(4, 0), DomainError);
}

TEST_CASE("from_dense edge cases") {
    CHECK(from_dense(DenseMatrix(4, 4)).nnzd() == 0);
    const DiagMatrix id = from_dense(DenseMatrix::identity(8));
    REQUIRE(id.nnzd() == 1);
    CHECK(id.diagonals()[0].offset == 0);
    CHECK(id.diagonals()[0].values == std::vector<Scalar>(8, 1.0));
    CHECK_THROWS_AS(from_dense(DenseMatrix(3, 4)), ShapeError);
    CHECK_THROWS_AS(from_dense(std::vector<std::vector<Scalar>>{{1, 2}, {3}}), ShapeError);
    const DenseMatrix small = to_dense(DiagMatrix(2, {Diagonal{1, {7}}}));
    CHECK(small(0, 0) == Scalar{});
    CHECK(small(0, 1) == Scalar{7});
    CHECK(small(1, 0) == Scalar{});
    CHECK(small(1, 1) == Scalar{});
}

TEST_CASE("constructor validation") {
    CHECK_THROWS_AS(DiagMatrix(0), DomainError);
    CHECK_THROWS_AS(DiagMatrix(3, {Diagonal{0, {1, 2}}}), DomainError);
    CHECK_THROWS_AS(DiagMatrix(3, {Diagonal{1, {1, 2}}, Diagonal{0, {1, 2, 3}}}), DomainError);
    CHECK_THROWS_AS(DiagMatrix(3, {Diagonal{3, {}}}), DomainError);
    CHECK_THROWS_AS(DiagMatrix(2, {Diagonal{0, {Scalar{std::nan(""), 0}, 1}}}), DomainError);
}

TEST_CASE("round trip and get agree with the dense grid on random matrices") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const Index n = std::uniform_int_distribution<Index>(1, 40)(rng);
        const auto count = std::uniform_int_distribution<std::size_t>(0, 5)(rng);
        const DiagMatrix m = testing::random_matrix(rng, n, count);
        const DenseMatrix g = to_dense(m);
        CHECK(from_dense(g) == m);
        std::size_t expect = 0;
        for (Index d : m.offsets()) expect += static_cast<std::size_t>(n - std::abs(d));
        CHECK(m.stored_scalars() == expect);
        CHECK(m.stored_scalars() <= static_cast<std::size_t>(n * n));
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j) REQUIRE(m.get(i, j) == g(i, j));
    }
}

TEST_CASE("storage equals N^2 only when every diagonal is present") {
    std::mt19937_64 rng(3);
    const Index n = 6;
    const DiagMatrix full = testing::random_matrix(rng, n, static_cast<std::size_t>(2 * n - 1));
    CHECK(full.stored_scalars() == static_cast<std::size_t>(n * n));
    const DiagMatrix partial = testing::random_matrix(rng, n, static_cast<std::size_t>(2 * n - 2));
    CHECK(partial.stored_scalars() < static_cast<std::size_t>(n * n));
}

TEST_CASE("drop_zero_diagonals") {
    const DiagMatrix m(3, {Diagonal{-1, {0, 0}}, Diagonal{0, {1, 2, 3}}});
    CHECK(drop_zero_diagonals(m).offsets() == std::vector<Index>{0});
    const DiagMatrix clean(3, {Diagonal{0, {1, 2, 3}}});
    CHECK(drop_zero_diagonals(clean) == clean);
    CHECK(drop_zero_diagonals(DiagMatrix(3, {Diagonal{0, {1e-20, 0, 0}}}), 1e-18).nnzd() == 0);
    CHECK_THROWS_AS(drop_zero_diagonals(clean, -1.0), DomainError);
}

TEST_CASE("exact cancellation removes the product diagonal") {
    // a0 (.) b0 = -a1 (.) b(-1) on a 2x2: C(0,0) = a0[0] b0[0] + a1[0] b-1[0] = 0,
    // and C(1,1) = a0[1] b0[1] = 0 by choice of a0[1].
    const DiagMatrix a(2, {Diagonal{0, {1, 0}}, Diagonal{1, {1}}});
    const DiagMatrix b(2, {Diagonal{-1, {-1}}, Diagonal{0, {1, 1}}});
    const DiagMatrix c = diag_matmul(a, b);
    const DenseMatrix oracle = dense_matmul_oracle(to_dense(a), to_dense(b));
    CHECK(oracle(0, 0) == Scalar{});
    CHECK(oracle(1, 1) == Scalar{});
    CHECK(c.find(0) == nullptr);
    CHECK(to_dense(c) == oracle);
}

TEST_CASE("one_norm") {
    CHECK(one_norm(DiagMatrix::identity(16)) == 1.0);
    CHECK(one_norm(corner_matrix(1, 1, 1, 1, 1, 1)) == 2.0);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const DiagMatrix m = testing::random_matrix(rng, 64, 5);
        const double dense = dense_one_norm(to_dense(m));
        CHECK(std::abs(one_norm(m) - dense) <= 1e-12 * dense);
    }
}

TEST_CASE("conjugate transpose and the Hermitian check") {
    std::mt19937_64 rng(9);
    const DiagMatrix m = testing::random_matrix(rng, 12, 4);
    const DenseMatrix g = to_dense(m), h = to_dense(conj_transpose(m));
    for (Index i = 0; i < 12; ++i)
        for (Index j = 0; j < 12; ++j) CHECK(h(i, j) == std::conj(g(j, i)));
    CHECK(is_hermitian(add_scaled(m, conj_transpose(m)), 1e-15));
    CHECK_FALSE(is_hermitian(DiagMatrix(2, {Diagonal{1, {1}}})));
    CHECK_FALSE(is_hermitian(DiagMatrix(2, {Diagonal{0, {Scalar{0, 1}, 1}}})));
}

TEST_CASE("add_scaled and scaled") {
    const DiagMatrix a(3, {Diagonal{0, {1, 1, 1}}});
    const DiagMatrix b(3, {Diagonal{0, {1, 1, 1}}, Diagonal{2, {5}}});
    const DiagMatrix diff = add_scaled(a, b, -1.0);
    CHECK(diff.offsets() == std::vector<Index>{2});
    CHECK(diff.diagonals()[0].values[0] == Scalar{-5});
    CHECK(scaled(b, 2.0).get(0, 2) == Scalar{10});
    CHECK_THROWS_AS(add_scaled(a, DiagMatrix(4)), ShapeError);
}

TEST_CASE("float32 rounding") {
    const DiagMatrix m(1, {Diagonal{0, {Scalar{0.1, -0.1}}}});
    const Scalar v = round_to_float32(m).get(0, 0);
    CHECK(v.real() == static_cast<double>(0.1f));
    CHECK(v.imag() == static_cast<double>(-0.1f));
}

TEST_CASE("single-qubit Pauli matrices") {
    const DiagMatrix z = pauli_to_diagmatrix({pauli_term(1, 1.0, {{0, Pauli::Z}})}, 1);
    CHECK(z.offsets() == std::vector<Index>{0});
    CHECK(z.diagonals()[0].values == std::vector<Scalar>{1, -1});
    const DiagMatrix x = pauli_to_diagmatrix({pauli_term(1, 1.0, {{0, Pauli::X}})}, 1);
    CHECK(x.offsets() == std::vector<Index>{-1, 1});
    CHECK(x.diagonals()[0].values == std::vector<Scalar>{1});
    CHECK(x.diagonals()[1].values == std::vector<Scalar>{1});
    const DiagMatrix y = pauli_to_diagmatrix({pauli_term(1, 1.0, {{0, Pauli::Y}})}, 1);
    CHECK(y.get(0, 1) == Scalar(0, -1));
    CHECK(y.get(1, 0) == Scalar(0, 1));
}

TEST_CASE("Pauli sums match the dense Kronecker oracle") {
    std::mt19937_64 rng(21);
    const Pauli all[] = {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};
    for (int n = 1; n <= 6; ++n) {
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<PauliTerm> terms;
            const int count = std::uniform_int_distribution<int>(1, 4)(rng);
            for (int k = 0; k < count; ++k) {
                PauliTerm t{std::uniform_real_distribution<double>(-2, 2)(rng), {}};
                for (int q = 0; q < n; ++q) t.axes.push_back(all[std::uniform_int_distribution<int>(0, 3)(rng)]);
                terms.push_back(t);
            }
            const DiagMatrix m = pauli_to_diagmatrix(terms, n);
            CHECK(relative_frobenius_error(to_dense(m), kron_sum(terms, n)) <= 1e-15);
            CHECK(is_hermitian(m, 1e-14));
        }
        for (int k = 0; k < n; ++k) {
            const DiagMatrix xk = pauli_to_diagmatrix({pauli_term(n, 1.0, {{k, Pauli::X}})}, n);
            CHECK(xk.offsets() == std::vector<Index>{-(Index{1} << k), Index{1} << k});
        }
    }
}

TEST_CASE("benchmark generators") {
    const DiagMatrix maxcut = gen_benchmark("maxcut", 10);
    CHECK(maxcut.dim() == 1024);
    CHECK(maxcut.nnzd() == 1);
    CHECK(gen_benchmark("maxcut-ising", 10) == maxcut);

    const DiagMatrix heis = gen_benchmark("heisenberg", 10);
    CHECK(heis.dim() == 1024);
    CHECK(heis.nnzd() == 19);
    CHECK(heis.nonzeros() == 5632);

    const DiagMatrix h3 = gen_benchmark("heisenberg", 3);
    CHECK(relative_frobenius_error(to_dense(h3), kron_sum(benchmark_terms("heisenberg", 3), 3)) <= 1e-15);

    const DiagMatrix tfim = gen_benchmark("tfim", 8);
    CHECK(tfim.dim() == 256);
    CHECK(tfim.nnzd() == 17);
    CHECK(gen_benchmark("tfim", 10).nonzeros() == 11264);

    for (const std::string& model : benchmark_models()) CHECK(is_hermitian(gen_benchmark(model, 5), 1e-14));

    CHECK_THROWS_AS(gen_benchmark("hubbard", 4), UsageError);
    CHECK_THROWS_AS(gen_benchmark("tfim", 4, {{"bogus", 1.0}}), UsageError);
    CHECK_THROWS_AS(gen_benchmark("tfim", 17), DomainError);
    CHECK_THROWS_AS(pauli_to_diagmatrix({pauli_term(2, 1.0, {})}, 3), DomainError);
}
