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

#include <algorithm>
#include <atomic>
#include <cmath>

#include "diamond/kernels.hpp"

namespace diamond::kernels {

namespace {

inline Scalar cmul(Scalar a, Scalar b) {
    const double ar = a.real(), ai = a.imag(), br = b.real(), bi = b.imag();
    return {ar * br - ai * bi, ar * bi + ai * br};
}

void hadamard_accumulate_scalar(Scalar* out, const Scalar* a, const Scalar* b, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
        const Scalar p = cmul(a[k], b[k]);
        out[k] = {out[k].real() + p.real(), out[k].imag() + p.imag()};
    }
}

void axpy_scalar(Scalar* out, Scalar s, const Scalar* x, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
        const Scalar p = cmul(x[k], s);
        out[k] = {out[k].real() + p.real(), out[k].imag() + p.imag()};
    }
}

void scale_scalar(Scalar* v, Scalar s, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) v[k] = cmul(v[k], s);
}

double max_norm_sq_scalar(const Scalar* v, std::size_t n) {
    double best = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double m = v[k].real() * v[k].real() + v[k].imag() * v[k].imag();
        best = std::max(best, m);
    }
    return best;
}

void abs_accumulate_scalar(double* acc, const Scalar* v, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k)
        acc[k] += std::sqrt(v[k].real() * v[k].real() + v[k].imag() * v[k].imag());
}

constexpr KernelTable kScalar{Isa::scalar,       hadamard_accumulate_scalar, axpy_scalar,
                              scale_scalar,      max_norm_sq_scalar,         abs_accumulate_scalar};

std::atomic<const KernelTable*>& active_slot() {
    static std::atomic<const KernelTable*> slot{&table_for(detect_isa())};
    return slot;
}

const KernelTable& active() { return *active_slot().load(std::memory_order_relaxed); }

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

bool isa_supported(Isa isa) {
    switch (isa) {
    case Isa::scalar:
        return true;
    case Isa::avx2:
#if defined(__x86_64__) || defined(__i386__)
        return avx2_table() != nullptr && __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    case Isa::neon:
        return neon_table() != nullptr;
    }
    return false;
}

Isa detect_isa() {
    if (isa_supported(Isa::avx2)) return Isa::avx2;
    if (isa_supported(Isa::neon)) return Isa::neon;
    return Isa::scalar;
}

const KernelTable& table_for(Isa isa) {
    if (!isa_supported(isa)) throw UsageError("kernel variant '" + std::string(isa_name(isa)) + "' is not supported on this CPU");
    switch (isa) {
    case Isa::avx2:
        return *avx2_table();
    case Isa::neon:
        return *neon_table();
    case Isa::scalar:
        break;
    }
    return kScalar;
}

Isa active_isa() { return active().isa; }

void set_isa(Isa isa) { active_slot().store(&table_for(isa), std::memory_order_relaxed); }

std::string_view isa_name(Isa isa) {
    switch (isa) {
    case Isa::scalar:
        return "scalar";
    case Isa::avx2:
        return "avx2";
    case Isa::neon:
        return "neon";
    }
    return "?";
}

std::optional<Isa> parse_isa(std::string_view name) {
    if (name == "scalar") return Isa::scalar;
    if (name == "avx2") return Isa::avx2;
    if (name == "neon") return Isa::neon;
    if (name == "auto") return detect_isa();
    return std::nullopt;
}

void hadamard_accumulate(std::span<Scalar> out, std::span<const Scalar> a, std::span<const Scalar> b) {
    if (a.size() != out.size() || b.size() != out.size()) throw ShapeError("hadamard_accumulate: span lengths differ");
    active().hadamard_accumulate(out.data(), a.data(), b.data(), out.size());
}

void axpy(std::span<Scalar> out, Scalar s, std::span<const Scalar> x) {
    if (x.size() != out.size()) throw ShapeError("axpy: span lengths differ");
    active().axpy(out.data(), s, x.data(), out.size());
}

void scale(std::span<Scalar> v, Scalar s) { active().scale(v.data(), s, v.size()); }

double max_abs(std::span<const Scalar> v) { return std::sqrt(active().max_norm_sq(v.data(), v.size())); }

void abs_accumulate(std::span<double> acc, std::span<const Scalar> v) {
    if (acc.size() < v.size()) throw ShapeError("abs_accumulate: accumulator shorter than input");
    active().abs_accumulate(acc.data(), v.data(), v.size());
}

}  // namespace diamond::kernels
