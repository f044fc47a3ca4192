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

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "diamond/diag_matrix.hpp"

namespace diamond {

enum class Pauli : std::uint8_t { I, X, Y, Z };

/// coefficient * (axes[n-1] (x) ... (x) axes[0]); qubit 0 is the least
/// significant bit of the basis index.
struct PauliTerm {
    Scalar coefficient{1.0, 0.0};
    std::vector<Pauli> axes;
};

/// Upper bound on qubit count for anything that materializes a 2^n matrix.
inline constexpr int kDefaultMaxQubits = 16;

/// Term with `p` on the listed qubits and identity elsewhere.
PauliTerm pauli_term(int n, Scalar coefficient, std::initializer_list<std::pair<int, Pauli>> ops);

/// Sum of the terms as a DiagMatrix of dimension 2^n. Exact zero diagonals
/// produced by cancellation are dropped.
DiagMatrix pauli_to_diagmatrix(const std::vector<PauliTerm>& terms, int n, int max_qubits = kDefaultMaxQubits);

using ModelParams = std::map<std::string, double>;

/// Names accepted by gen_benchmark.
std::vector<std::string> benchmark_models();

/// Pauli decomposition of a named 1D-chain model. Recognised parameters:
///   heisenberg: J (1), hz (0), periodic (0)
///   tfim:       J (1), g (1), periodic (0)          H = -J sum ZZ - g sum X
///   maxcut:     w (1), periodic (0)                 H = w sum_{edges} ZZ
///   qmaxcut:    w (1), periodic (0)                 H = w/2 sum (I - XX - YY - ZZ)
/// Unknown model or parameter names raise UsageError.
std::vector<PauliTerm> benchmark_terms(const std::string& model, int n, const ModelParams& params = {});

DiagMatrix gen_benchmark(const std::string& model, int n, const ModelParams& params = {},
                         int max_qubits = kDefaultMaxQubits);

}  // namespace diamond
