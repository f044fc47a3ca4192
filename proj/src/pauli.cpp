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

#include "diamond/pauli.hpp"

#include <algorithm>
#include <bit>

namespace diamond {

namespace {

// i^k for k mod 4.
Scalar i_power(int k) {
    switch (k & 3) {
    case 0:
        return {1.0, 0.0};
    case 1:
        return {0.0, 1.0};
    case 2:
        return {-1.0, 0.0};
    default:
        return {0.0, -1.0};
    }
}

double param(const ModelParams& p, const std::string& key, double fallback) {
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

void check_params(const std::string& model, const ModelParams& p, std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : p) {
        (void)value;
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
            throw UsageError("model '" + model + "' has no parameter '" + key + "'");
    }
}

std::vector<std::pair<int, int>> chain_bonds(int n, bool periodic) {
    std::vector<std::pair<int, int>> bonds;
    for (int q = 0; q + 1 < n; ++q) bonds.emplace_back(q, q + 1);
    if (periodic && n > 2) bonds.emplace_back(n - 1, 0);
    return bonds;
}

}  // namespace

PauliTerm pauli_term(int n, Scalar coefficient, std::initializer_list<std::pair<int, Pauli>> ops) {
    PauliTerm t{coefficient, std::vector<Pauli>(static_cast<std::size_t>(n), Pauli::I)};
    for (const auto& [q, p] : ops) {
        if (q < 0 || q >= n) throw DomainError("qubit index out of range");
        t.axes[static_cast<std::size_t>(q)] = p;
    }
    return t;
}

DiagMatrix pauli_to_diagmatrix(const std::vector<PauliTerm>& terms, int n, int max_qubits) {
    if (n < 1) throw DomainError("need at least one qubit");
    if (n > max_qubits)
        throw DomainError(std::to_string(n) + " qubits exceeds the cap of " + std::to_string(max_qubits));
    const Index dim = Index{1} << n;

    std::map<Index, std::vector<Scalar>> acc;
    for (const PauliTerm& t : terms) {
        if (static_cast<int>(t.axes.size()) != n) throw DomainError("Pauli term has the wrong number of axes");
        std::uint64_t flip = 0, zmask = 0;
        int n_y = 0;
        for (int q = 0; q < n; ++q) {
            const std::uint64_t bit = std::uint64_t{1} << q;
            switch (t.axes[static_cast<std::size_t>(q)]) {
            case Pauli::X:
                flip |= bit;
                break;
            case Pauli::Y:
                flip |= bit;
                zmask |= bit;
                ++n_y;
                break;
            case Pauli::Z:
                zmask |= bit;
                break;
            case Pauli::I:
                break;
            }
        }
        // Y|b> = i(-1)^b |1-b>, Z|b> = (-1)^b |b>: the column phase is
        // i^{#Y} (-1)^{popcount(col & (Y|Z mask))}.
        const Scalar base = t.coefficient * i_power(n_y);
        for (Index col = 0; col < dim; ++col) {
            const auto c = static_cast<std::uint64_t>(col);
            const Index row = static_cast<Index>(c ^ flip);
            const Index d = col - row;
            const Scalar v = (std::popcount(c & zmask) & 1) ? -base : base;
            auto [it, fresh] = acc.try_emplace(d);
            if (fresh) it->second.assign(static_cast<std::size_t>(dim - (d < 0 ? -d : d)), Scalar{});
            it->second[static_cast<std::size_t>(row - first_row(d))] += v;
        }
    }

    std::vector<Diagonal> diags;
    diags.reserve(acc.size());
    for (auto& [d, values] : acc) diags.push_back(Diagonal{d, std::move(values)});
    return drop_zero_diagonals(DiagMatrix(dim, std::move(diags)), 0.0);
}

std::vector<std::string> benchmark_models() { return {"heisenberg", "tfim", "maxcut", "qmaxcut"}; }

std::vector<PauliTerm> benchmark_terms(const std::string& model, int n, const ModelParams& params) {
    std::vector<PauliTerm> terms;
    if (model == "heisenberg") {
        check_params(model, params, {"J", "hz", "periodic"});
        const double j = param(params, "J", 1.0);
        const double hz = param(params, "hz", 0.0);
        for (auto [a, b] : chain_bonds(n, param(params, "periodic", 0.0) != 0.0))
            for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) terms.push_back(pauli_term(n, j, {{a, p}, {b, p}}));
        if (hz != 0.0)
            for (int q = 0; q < n; ++q) terms.push_back(pauli_term(n, hz, {{q, Pauli::Z}}));
    } else if (model == "tfim") {
        check_params(model, params, {"J", "g", "periodic"});
        const double j = param(params, "J", 1.0);
        const double g = param(params, "g", 1.0);
        for (auto [a, b] : chain_bonds(n, param(params, "periodic", 0.0) != 0.0))
            terms.push_back(pauli_term(n, -j, {{a, Pauli::Z}, {b, Pauli::Z}}));
        for (int q = 0; q < n; ++q) terms.push_back(pauli_term(n, -g, {{q, Pauli::X}}));
    } else if (model == "maxcut" || model == "maxcut-ising") {
        check_params(model, params, {"w", "periodic"});
        const double w = param(params, "w", 1.0);
        for (auto [a, b] : chain_bonds(n, param(params, "periodic", 0.0) != 0.0))
            terms.push_back(pauli_term(n, w, {{a, Pauli::Z}, {b, Pauli::Z}}));
    } else if (model == "qmaxcut") {
        check_params(model, params, {"w", "periodic"});
        const double w = param(params, "w", 1.0);
        for (auto [a, b] : chain_bonds(n, param(params, "periodic", 0.0) != 0.0)) {
            terms.push_back(pauli_term(n, 0.5 * w, {}));
            for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) terms.push_back(pauli_term(n, -0.5 * w, {{a, p}, {b, p}}));
        }
    } else {
        throw UsageError("unknown model '" + model + "'");
    }
    return terms;
}

DiagMatrix gen_benchmark(const std::string& model, int n, const ModelParams& params, int max_qubits) {
    if (n < 1) throw DomainError("need at least one qubit");
    if (n > max_qubits)
        throw DomainError(std::to_string(n) + " qubits exceeds the cap of " + std::to_string(max_qubits));
    return pauli_to_diagmatrix(benchmark_terms(model, n, params), n, max_qubits);
}

}  // namespace diamond
