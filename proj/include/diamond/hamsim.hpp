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
 * @file hamsim.hpp
 * @brief Truncated Taylor series exp(-i t H) over chained diagonal products.
 *
 * With M = -i t H, T_0 = I and T_1 = M, iteration k (k >= 1) forms
 * T_{k+1} = T_k M / (k + 1). A run with K terms beyond the identity performs
 * K - 1 products, so "iters" products correspond to K = iters + 1.
 */

#pragma once

#include <optional>
#include <vector>

#include "diamond/accelerator.hpp"

namespace diamond {

struct TaylorConfig {
    double t = 1.0;
    /// Fixed highest power K; when absent K follows from eps.
    std::optional<int> terms;
    double eps = 1e-8;
    int max_terms = 64;
    bool use_simulator = true;
    /// U = (expansion at t / segments) ^ segments.
    int segments = 1;
    bool float32 = false;
    /// Drop threshold after each product, relative to the largest entry.
    double drop_relative = 1e-14;
    int threads = 1;
    AcceleratorConfig accel;

    void validate() const;
};

struct IterationRecord {
    int k = 0;
    std::size_t nnzd = 0;
    std::size_t nnze = 0;               // stored scalars of T_{k+1}
    std::size_t nonzeros = 0;           // entries that are exactly nonzero
    std::size_t storage_scalars = 0;
    double savings = 0.0;
    StageCycles stage_cycles;
    DataflowEvents events;
    MemStats mem;
    std::uint64_t max_active_dpes = 0;
    std::size_t jobs = 0;
};

struct TaylorResult {
    DiagMatrix u;
    int terms = 0;                      // K
    double one_norm_m = 0.0;
    std::vector<IterationRecord> records;
    StageCycles cycles;
    DataflowEvents events;
    MemStats mem;                       // including the final write-back flush
    int grid_rows = 0;
    int grid_cols = 0;
};

/// Smallest K with norm^{K+1} / (K+1)! <= eps; ConvergenceError beyond cap.
int taylor_terms(double norm, double eps, int cap);

TaylorResult taylor_expm(const DiagMatrix& h, const TaylorConfig& cfg);

/// Fraction of dense storage saved, 1 - storage / N^2, per record.
std::vector<double> storage_report(const std::vector<IterationRecord>& records, Index n);
double storage_savings(std::size_t storage_scalars, Index n);

/// sum_{k=0}^{K} (-i t H)^k / k! with dense products.
DenseMatrix dense_taylor_oracle(const DenseMatrix& h, double t, int terms);

}  // namespace diamond
