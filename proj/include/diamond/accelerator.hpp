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
 * @file accelerator.hpp
 * @brief Blocking, grid simulation and cache charging for whole products.
 *
 * Memory accounting per job:
 *   - one read of the A-group line per A diagonal streamed (C accesses)
 *   - one read of the B-group line per B diagonal streamed (R accesses)
 *   - one write per output diagonal the job touches, on the line holding
 *     that diagonal's chunk of the final product
 * Output chunks use the A-side group size, so when the product becomes the
 * next left operand its groups live on the same lines. Lines are keyed by
 * (matrix tag, window, chunk); give two operands the same tag when they are
 * the same matrix.
 */

#pragma once

#include <cstdint>
#include <vector>

#include "diamond/blocking.hpp"
#include "diamond/dataflow.hpp"
#include "diamond/memory.hpp"

namespace diamond {

struct AcceleratorConfig {
    PlanConfig plan;
    FeedConfig feed;
    CacheConfig cache;
    int pipeline_lanes = 1;
    /// Cross-check every product against diag_matmul (VerificationError on divergence).
    bool verify = true;
    double verify_tolerance = 1e-12;
    /// Output diagonals with max |entry| <= rel * max |C| are dropped.
    double drop_relative = 0.0;
    int threads = 1;
    TraceSink trace;
};

struct MatrixTags {
    std::int64_t a = 0;
    std::int64_t b = 1;
    std::int64_t c = 2;
};

struct ProductResult {
    DiagMatrix c;
    BlockPlan plan;
    std::vector<JobResult> jobs;
    StageCycles cycles;         // summed over jobs
    DataflowEvents events;
    MemStats mem;               // delta for this product, before any flush
    std::uint64_t max_active_dpes = 0;
    int max_rows = 0;
    int max_cols = 0;
};

/// Offsets touched by a job's (A segment, B segment) pairs with nonempty overlap.
std::vector<Index> job_output_offsets(const BlockPlan& plan, const BlockJob& job);

/// Charge one job's accesses. Output offset d falls in chunk
/// (position of d in final_offsets) / chunk_size.
MemStats charge_job(const BlockPlan& plan, std::size_t job_index, Cache& cache, LineRegistry& registry,
                    const MatrixTags& tags, const std::vector<Index>& final_offsets, int chunk_size);

class Accelerator {
public:
    explicit Accelerator(AcceleratorConfig cfg = {});

    const AcceleratorConfig& config() const { return cfg_; }
    const Cache& cache() const { return cache_; }

    ProductResult multiply(const DiagMatrix& a, const DiagMatrix& b, const MatrixTags& tags = {});
    /// Write back dirty lines; returns the stats delta of the flush.
    MemStats flush();

private:
    AcceleratorConfig cfg_;
    Cache cache_;
    LineRegistry registry_;
};

}  // namespace diamond
