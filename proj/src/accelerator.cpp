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

#include "diamond/accelerator.hpp"

#include <algorithm>
#include <set>
#include <thread>

#include "diamond/spmspm.hpp"

namespace diamond {

std::vector<Index> job_output_offsets(const BlockPlan& plan, const BlockJob& job) {
    std::set<Index> out;
    const BlockGroup& ag = plan.a_groups.at(static_cast<std::size_t>(job.a_group));
    const BlockGroup& bg = plan.b_groups.at(static_cast<std::size_t>(job.b_group));
    for (const DiagSegment& sa : ag.segments)
        for (const DiagSegment& sb : bg.segments) {
            const Index lo = std::max(sa.row_start, sb.row_start - sa.offset);
            const Index hi = std::min(sa.row_end(), sb.row_end() - sa.offset);
            if (lo < hi) out.insert(sa.offset + sb.offset);
        }
    return {out.begin(), out.end()};
}

MemStats charge_job(const BlockPlan& plan, std::size_t job_index, Cache& cache, LineRegistry& registry,
                    const MatrixTags& tags, const std::vector<Index>& final_offsets, int chunk_size) {
    const MemStats before = cache.stats();
    const BlockJob& job = plan.jobs.at(job_index);
    const BlockGroup& ag = plan.a_groups.at(static_cast<std::size_t>(job.a_group));
    const BlockGroup& bg = plan.b_groups.at(static_cast<std::size_t>(job.b_group));

    const LineId a_line{LineKind::a_group, registry.id(tags.a, ag.window, ag.chunk)};
    for (std::size_t k = 0; k < ag.segments.size(); ++k) cache.access(a_line, Access::read);
    const LineId b_line{LineKind::b_group, registry.id(tags.b, bg.window, bg.chunk)};
    for (std::size_t k = 0; k < bg.segments.size(); ++k) cache.access(b_line, Access::read);

    for (Index dc : job_output_offsets(plan, job)) {
        const auto pos = std::lower_bound(final_offsets.begin(), final_offsets.end(), dc) - final_offsets.begin();
        const int chunk = static_cast<int>(pos / chunk_size);
        cache.access(LineId{LineKind::c_partial, registry.id(tags.c, 0, chunk)}, Access::write);
    }
    return cache.stats() - before;
}

Accelerator::Accelerator(AcceleratorConfig cfg) : cfg_(std::move(cfg)), cache_(cfg_.cache) {
    if (cfg_.threads < 1) throw UsageError("thread count must be positive");
}

ProductResult Accelerator::multiply(const DiagMatrix& a, const DiagMatrix& b, const MatrixTags& tags) {
    if (a.dim() != b.dim()) throw ShapeError("multiply: operand dimensions differ");
    ProductResult res;
    res.plan = make_plan(a, b, cfg_.plan);
    const BlockPlan& plan = res.plan;
    res.jobs.resize(plan.jobs.size());

    RunOptions opts;
    opts.max_rows = plan.grid_rows;
    opts.max_cols = plan.grid_cols;
    opts.pipeline_lanes = cfg_.pipeline_lanes;
    opts.trace = cfg_.trace;

    auto simulate = [&](std::size_t k, PartialBank& bank) {
        const BlockJob& job = plan.jobs[k];
        res.jobs[k] = run_job(plan.n, plan.a_groups[static_cast<std::size_t>(job.a_group)].segments,
                              plan.b_groups[static_cast<std::size_t>(job.b_group)].segments, cfg_.feed, bank, opts);
    };

    // Jobs run in batches of `threads`; partial banks are merged in schedule order.
    PartialBank total(plan.n);
    const std::size_t batch = cfg_.trace ? 1 : static_cast<std::size_t>(cfg_.threads);
    for (std::size_t first = 0; first < plan.jobs.size(); first += batch) {
        const std::size_t last = std::min(plan.jobs.size(), first + batch);
        std::vector<PartialBank> banks(last - first, PartialBank(plan.n));
        if (last - first == 1) {
            simulate(first, banks[0]);
        } else {
            std::vector<std::thread> pool;
            for (std::size_t k = first; k < last; ++k) pool.emplace_back([&, k] { simulate(k, banks[k - first]); });
            for (auto& t : pool) t.join();
        }
        for (const PartialBank& bank : banks) total.merge(bank);
    }

    DiagMatrix c = total.to_matrix();
    if (cfg_.drop_relative > 0.0) c = drop_zero_diagonals(c, cfg_.drop_relative * c.max_abs());

    if (cfg_.verify) {
        DiagMatrix ref = diag_matmul(a, b, nullptr, cfg_.threads);
        if (cfg_.drop_relative > 0.0) ref = drop_zero_diagonals(ref, cfg_.drop_relative * ref.max_abs());
        const double err = relative_frobenius_error(c, ref);
        if (!(err <= cfg_.verify_tolerance) && !(frobenius_norm(ref) == 0.0 && frobenius_norm(c) == 0.0))
            throw VerificationError("simulated product diverges from the functional kernel (relative error " +
                                    std::to_string(err) + ")");
    }

    const std::vector<Index> final_offsets = c.offsets();
    const int chunk = cfg_.plan.a_group_size == 0 ? plan.grid_cols : cfg_.plan.a_group_size;
    for (std::size_t k = 0; k < plan.jobs.size(); ++k) {
        res.mem += charge_job(plan, k, cache_, registry_, tags, final_offsets, chunk);
        const JobResult& j = res.jobs[k];
        res.cycles += j.cycles;
        res.events += j.events;
        res.max_active_dpes = std::max(res.max_active_dpes, j.active_dpes);
        res.max_rows = std::max(res.max_rows, j.rows);
        res.max_cols = std::max(res.max_cols, j.cols);
    }
    res.c = std::move(c);
    return res;
}

MemStats Accelerator::flush() {
    const MemStats before = cache_.stats();
    cache_.flush();
    return cache_.stats() - before;
}

}  // namespace diamond
