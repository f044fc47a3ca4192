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
 * @file kernels.hpp
 * @brief Data-parallel inner loops over diagonal value vectors.
 *
 * Every kernel has a scalar reference implementation plus SIMD variants
 * (AVX2 on x86-64, NEON on AArch64). The variant is chosen once at startup
 * from the running CPU and can be pinned with set_isa(). All variants
 * perform the same IEEE operations in the same order per element, so their
 * results are bit-identical to the scalar reference; the equivalence tests
 * assert exact equality rather than a tolerance.
 *
 * Complex products are always formed as
 *   re = ar*br - ai*bi,  im = ar*bi + ai*br
 * and the project is built with -ffp-contract=off so no variant fuses them.
 */

#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "diamond/types.hpp"

namespace diamond::kernels {

enum class Isa { scalar, avx2, neon };

/// Function table for one instruction-set variant.
struct KernelTable {
    Isa isa;
    // out[k] += a[k] * b[k]
    void (*hadamard_accumulate)(Scalar* out, const Scalar* a, const Scalar* b, std::size_t n);
    // out[k] += s * x[k]
    void (*axpy)(Scalar* out, Scalar s, const Scalar* x, std::size_t n);
    // v[k] *= s
    void (*scale)(Scalar* v, Scalar s, std::size_t n);
    // max_k |v[k]|^2
    double (*max_norm_sq)(const Scalar* v, std::size_t n);
    // acc[k] += |v[k]|
    void (*abs_accumulate)(double* acc, const Scalar* v, std::size_t n);
};

const KernelTable& scalar_table();
/// nullptr when the variant was not compiled for this target.
const KernelTable* avx2_table();
const KernelTable* neon_table();

/// Best variant the running CPU supports.
Isa detect_isa();
bool isa_supported(Isa isa);
Isa active_isa();
/// Pin the dispatch target; throws UsageError when the CPU lacks it.
void set_isa(Isa isa);
const KernelTable& table_for(Isa isa);

std::string_view isa_name(Isa isa);
std::optional<Isa> parse_isa(std::string_view name);

// Dispatching front-ends used by the rest of the library. Mismatched span
// lengths raise ShapeError; abs_accumulate only needs acc to cover v.
void hadamard_accumulate(std::span<Scalar> out, std::span<const Scalar> a, std::span<const Scalar> b);
void axpy(std::span<Scalar> out, Scalar s, std::span<const Scalar> x);
void scale(std::span<Scalar> v, Scalar s);
double max_abs(std::span<const Scalar> v);
void abs_accumulate(std::span<double> acc, std::span<const Scalar> v);

}  // namespace diamond::kernels
