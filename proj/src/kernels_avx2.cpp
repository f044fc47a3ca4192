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

// Compiled with -mavx2 (no -mfma). Only reached through the dispatcher after
// a runtime CPU check.

#include "diamond/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace diamond::kernels {

namespace {

// Two complex doubles per register: [re0, im0, re1, im1].
inline __m256d load2(const Scalar* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(Scalar* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

// a*b with re = ar*br - ai*bi, im = ai*br + ar*bi.
inline __m256d cmul2(__m256d a, __m256d b) {
    const __m256d b_re = _mm256_movedup_pd(b);
    const __m256d b_im = _mm256_permute_pd(b, 0xF);
    const __m256d a_swapped = _mm256_permute_pd(a, 0x5);
    return _mm256_addsub_pd(_mm256_mul_pd(a, b_re), _mm256_mul_pd(a_swapped, b_im));
}

inline Scalar cmul1(Scalar a, Scalar b) {
    const double ar = a.real(), ai = a.imag(), br = b.real(), bi = b.imag();
    return {ar * br - ai * bi, ar * bi + ai * br};
}

void hadamard_accumulate_avx2(Scalar* out, const Scalar* a, const Scalar* b, std::size_t n) {
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) store2(out + k, _mm256_add_pd(load2(out + k), cmul2(load2(a + k), load2(b + k))));
    for (; k < n; ++k) {
        const Scalar p = cmul1(a[k], b[k]);
        out[k] = {out[k].real() + p.real(), out[k].imag() + p.imag()};
    }
}

void axpy_avx2(Scalar* out, Scalar s, const Scalar* x, std::size_t n) {
    const __m256d sv = _mm256_setr_pd(s.real(), s.imag(), s.real(), s.imag());
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) store2(out + k, _mm256_add_pd(load2(out + k), cmul2(load2(x + k), sv)));
    for (; k < n; ++k) {
        const Scalar p = cmul1(x[k], s);
        out[k] = {out[k].real() + p.real(), out[k].imag() + p.imag()};
    }
}

void scale_avx2(Scalar* v, Scalar s, std::size_t n) {
    const __m256d sv = _mm256_setr_pd(s.real(), s.imag(), s.real(), s.imag());
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) store2(v + k, cmul2(load2(v + k), sv));
    for (; k < n; ++k) v[k] = cmul1(v[k], s);
}

double max_norm_sq_avx2(const Scalar* v, std::size_t n) {
    __m256d best = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const __m256d x = load2(v + k);
        const __m256d sq = _mm256_mul_pd(x, x);
        best = _mm256_max_pd(best, _mm256_hadd_pd(sq, sq));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, best);
    double m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
    for (; k < n; ++k) m = std::max(m, v[k].real() * v[k].real() + v[k].imag() * v[k].imag());
    return m;
}

void abs_accumulate_avx2(double* acc, const Scalar* v, std::size_t n) {
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d x01 = load2(v + k);
        const __m256d x23 = load2(v + k + 2);
        // hadd -> [n0, n2, n1, n3]; reorder to [n0, n1, n2, n3]
        const __m256d norms = _mm256_hadd_pd(_mm256_mul_pd(x01, x01), _mm256_mul_pd(x23, x23));
        const __m256d ordered = _mm256_permute4x64_pd(norms, _MM_SHUFFLE(3, 1, 2, 0));
        _mm256_storeu_pd(acc + k, _mm256_add_pd(_mm256_loadu_pd(acc + k), _mm256_sqrt_pd(ordered)));
    }
    for (; k < n; ++k) acc[k] += std::sqrt(v[k].real() * v[k].real() + v[k].imag() * v[k].imag());
}

constexpr KernelTable kAvx2{Isa::avx2, hadamard_accumulate_avx2, axpy_avx2, scale_avx2, max_norm_sq_avx2,
                            abs_accumulate_avx2};

}  // namespace

const KernelTable* avx2_table() { return &kAvx2; }

}  // namespace diamond::kernels

#else

namespace diamond::kernels {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace diamond::kernels

#endif
