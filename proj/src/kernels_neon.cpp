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

#include "diamond/kernels.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)

#include <arm_neon.h>

#include <algorithm>
#include <cmath>

namespace diamond::kernels {

namespace {

// One complex double per register: [re, im]. Uses vmulq/vsubq/vaddq only so
// the operation sequence matches the scalar reference (no vfmaq).
inline float64x2_t load1(const Scalar* p) { return vld1q_f64(reinterpret_cast<const double*>(p)); }
inline void store1(Scalar* p, float64x2_t v) { vst1q_f64(reinterpret_cast<double*>(p), v); }

inline float64x2_t cmul(float64x2_t a, float64x2_t b) {
    const float64x2_t b_re = vdupq_laneq_f64(b, 0);
    const float64x2_t b_im = vdupq_laneq_f64(b, 1);
    const float64x2_t t1 = vmulq_f64(a, b_re);                    // [ar*br, ai*br]
    const float64x2_t t2 = vmulq_f64(vextq_f64(a, a, 1), b_im);  // [ai*bi, ar*bi]
    const double re = vgetq_lane_f64(t1, 0) - vgetq_lane_f64(t2, 0);
    const double im = vgetq_lane_f64(t1, 1) + vgetq_lane_f64(t2, 1);
    return float64x2_t{re, im};
}

void hadamard_accumulate_neon(Scalar* out, const Scalar* a, const Scalar* b, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) store1(out + k, vaddq_f64(load1(out + k), cmul(load1(a + k), load1(b + k))));
}

void axpy_neon(Scalar* out, Scalar s, const Scalar* x, std::size_t n) {
    const float64x2_t sv{s.real(), s.imag()};
    for (std::size_t k = 0; k < n; ++k) store1(out + k, vaddq_f64(load1(out + k), cmul(load1(x + k), sv)));
}

void scale_neon(Scalar* v, Scalar s, std::size_t n) {
    const float64x2_t sv{s.real(), s.imag()};
    for (std::size_t k = 0; k < n; ++k) store1(v + k, cmul(load1(v + k), sv));
}

double max_norm_sq_neon(const Scalar* v, std::size_t n) {
    double m = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const float64x2_t x = load1(v + k);
        const float64x2_t sq = vmulq_f64(x, x);
        m = std::max(m, vgetq_lane_f64(sq, 0) + vgetq_lane_f64(sq, 1));
    }
    return m;
}

void abs_accumulate_neon(double* acc, const Scalar* v, std::size_t n) {
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const float64x2_t x0 = load1(v + k);
        const float64x2_t x1 = load1(v + k + 1);
        const float64x2_t norms = vpaddq_f64(vmulq_f64(x0, x0), vmulq_f64(x1, x1));
        vst1q_f64(acc + k, vaddq_f64(vld1q_f64(acc + k), vsqrtq_f64(norms)));
    }
    for (; k < n; ++k) acc[k] += std::sqrt(v[k].real() * v[k].real() + v[k].imag() * v[k].imag());
}

constexpr KernelTable kNeon{Isa::neon, hadamard_accumulate_neon, axpy_neon, scale_neon, max_norm_sq_neon,
                            abs_accumulate_neon};

}  // namespace

const KernelTable* neon_table() { return &kNeon; }

}  // namespace diamond::kernels

#else

namespace diamond::kernels {
const KernelTable* neon_table() { return nullptr; }
}  // namespace diamond::kernels

#endif
