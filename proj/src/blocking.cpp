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

#include "diamond/blocking.hpp"

#include <algorithm>

#include <json.hpp>

#include "diamond/kernels.hpp"

namespace diamond {

std::vector<Index> default_cuts(Index n) {
    constexpr Index kWindow = 4096;
    std::vector<Index> cuts;
    for (Index c = kWindow; c < n; c += kWindow) cuts.push_back(c);
    return cuts;
}

void validate_cuts(Index n, const std::vector<Index>& cuts) {
    for (std::size_t k = 0; k < cuts.size(); ++k) {
        if (cuts[k] < 1 || cuts[k] > n - 1)
            throw PlanError("cut " + std::to_string(cuts[k]) + " outside [1, " + std::to_string(n - 1) + "]");
        if (k > 0 && cuts[k] <= cuts[k - 1]) throw PlanError("cuts must be strictly ascending");
    }
}

namespace {

// Rows of diagonal d whose A-column (a_side) or B-row falls in [w0, w1).
std::pair<Index, Index> window_rows(const Diagonal& d, Index n, Index w0, Index w1, bool a_side) {
    const Index r0 = first_row(d.offset);
    const Index r1 = r0 + (n - (d.offset < 0 ? -d.offset : d.offset));
    const Index lo = a_side ? w0 - d.offset : w0;
    const Index hi = a_side ? w1 - d.offset : w1;
    return {std::max(r0, lo), std::min(r1, hi)};
}

std::vector<BlockGroup> split_by_window(const DiagMatrix& m, const std::vector<Index>& cuts, Side kind) {
    const bool a_side = kind == Side::A;
    std::vector<Index> edges{0};
    edges.insert(edges.end(), cuts.begin(), cuts.end());
    edges.push_back(m.dim());
    std::vector<BlockGroup> groups;
    for (std::size_t w = 0; w + 1 < edges.size(); ++w) {
        BlockGroup g;
        g.group_id = static_cast<int>(w);
        g.kind = kind;
        g.window = static_cast<int>(w);
        for (const Diagonal& d : m.diagonals()) {
            const auto [lo, hi] = window_rows(d, m.dim(), edges[w], edges[w + 1], a_side);
            if (lo >= hi) continue;
            const auto begin = d.values.begin() + (lo - first_row(d.offset));
            g.segments.push_back(DiagSegment{d.offset, lo, std::vector<Scalar>(begin, begin + (hi - lo))});
        }
        groups.push_back(std::move(g));
    }
    return groups;
}

}  // namespace

std::pair<std::vector<BlockGroup>, std::vector<BlockGroup>> partition_rowcol(const DiagMatrix& a, const DiagMatrix& b,
                                                                           const std::vector<Index>& cuts) {
    if (a.dim() != b.dim()) throw ShapeError("blocking: operand dimensions differ");
    validate_cuts(a.dim(), cuts);
    return {split_by_window(a, cuts, Side::A), split_by_window(b, cuts, Side::B)};
}

std::vector<BlockGroup> partition_diagonals(const BlockGroup& group, int group_size) {
    if (group_size < 1) throw PlanError("diagonal group size must be positive");
    std::vector<BlockGroup> out;
    const auto size = static_cast<std::size_t>(group_size);
    for (std::size_t k = 0; k < group.segments.size(); k += size) {
        BlockGroup g;
        g.kind = group.kind;
        g.window = group.window;
        g.chunk = static_cast<int>(out.size());
        const std::size_t end = std::min(group.segments.size(), k + size);
        g.segments.assign(group.segments.begin() + static_cast<std::ptrdiff_t>(k),
                          group.segments.begin() + static_cast<std::ptrdiff_t>(end));
        out.push_back(std::move(g));
    }
    for (std::size_t k = 0; k < out.size(); ++k) out[k].group_id = static_cast<int>(k);
    return out;
}

std::vector<BlockGroup> partition_diagonals(const DiagMatrix& m, Side kind, int group_size) {
    return partition_diagonals(split_by_window(m, {}, kind).front(), group_size);
}

BlockPlan make_plan(const DiagMatrix& a, const DiagMatrix& b, const PlanConfig& cfg) {
    if (cfg.grid_rows < 1 || cfg.grid_cols < 1) throw PlanError("grid dimensions must be positive");
    const int a_size = cfg.a_group_size == 0 ? cfg.grid_cols : cfg.a_group_size;
    const int b_size = cfg.b_group_size == 0 ? cfg.grid_rows : cfg.b_group_size;
    if (a_size < 1 || a_size > cfg.grid_cols)
        throw PlanError("A group size must lie in [1, grid_cols=" + std::to_string(cfg.grid_cols) + "]");
    if (b_size < 1 || b_size > cfg.grid_rows)
        throw PlanError("B group size must lie in [1, grid_rows=" + std::to_string(cfg.grid_rows) + "]");

    BlockPlan plan;
    plan.n = a.dim();
    plan.grid_rows = cfg.grid_rows;
    plan.grid_cols = cfg.grid_cols;
    plan.cuts = cfg.cuts_given ? cfg.cuts : default_cuts(a.dim());
    auto [a_windows, b_windows] = partition_rowcol(a, b, plan.cuts);

    for (std::size_t w = 0; w < a_windows.size(); ++w) {
        const auto first_a = plan.a_groups.size();
        for (BlockGroup& g : partition_diagonals(a_windows[w], a_size)) {
            g.group_id = static_cast<int>(plan.a_groups.size());
            plan.a_groups.push_back(std::move(g));
        }
        const auto first_b = plan.b_groups.size();
        for (BlockGroup& g : partition_diagonals(b_windows[w], b_size)) {
            g.group_id = static_cast<int>(plan.b_groups.size());
            plan.b_groups.push_back(std::move(g));
        }
        for (auto bi = first_b; bi < plan.b_groups.size(); ++bi)
            for (auto ai = first_a; ai < plan.a_groups.size(); ++ai)
                plan.jobs.push_back(BlockJob{static_cast<int>(ai), static_cast<int>(bi)});
    }
    return plan;
}

// ---------------------------------------------------------------------------
// PartialBank
// ---------------------------------------------------------------------------

std::vector<Scalar>& PartialBank::diagonal(Index dc) {
    auto [it, fresh] = diags_.try_emplace(dc);
    if (fresh) it->second.assign(static_cast<std::size_t>(diag_length(n_, dc)), Scalar{});
    return it->second;
}

void PartialBank::merge(const PartialBank& other) {
    if (other.n_ != n_) throw ShapeError("merging partial banks of different dimensions");
    for (const auto& [dc, values] : other.diags_) {
        auto [it, fresh] = diags_.try_emplace(dc);
        if (fresh) it->second.assign(values.size(), Scalar{});
        kernels::axpy(it->second, Scalar{1.0, 0.0}, values);
    }
}

DiagMatrix PartialBank::to_matrix() const {
    std::vector<Diagonal> out;
    out.reserve(diags_.size());
    for (const auto& [dc, values] : diags_) out.push_back(Diagonal{dc, values});
    return drop_zero_diagonals(DiagMatrix(n_, std::move(out)), 0.0);
}

PartialBank job_product(const BlockPlan& plan, const BlockJob& job) {
    PartialBank bank(plan.n);
    const BlockGroup& ag = plan.a_groups.at(static_cast<std::size_t>(job.a_group));
    const BlockGroup& bg = plan.b_groups.at(static_cast<std::size_t>(job.b_group));
    for (const DiagSegment& sa : ag.segments) {
        for (const DiagSegment& sb : bg.segments) {
            // A row r meets B row r + dA.
            const Index lo = std::max(sa.row_start, sb.row_start - sa.offset);
            const Index hi = std::min(sa.row_end(), sb.row_end() - sa.offset);
            if (lo >= hi) continue;
            const Index dc = sa.offset + sb.offset;
            std::vector<Scalar>& out = bank.diagonal(dc);
            const auto len = static_cast<std::size_t>(hi - lo);
            kernels::hadamard_accumulate({out.data() + (lo - first_row(dc)), len},
                                         {sa.values.data() + (lo - sa.row_start), len},
                                         {sb.values.data() + (lo + sa.offset - sb.row_start), len});
        }
    }
    return bank;
}

DiagMatrix execute_plan(const BlockPlan& plan) {
    std::vector<std::size_t> order(plan.jobs.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    return execute_plan(plan, order);
}

DiagMatrix execute_plan(const BlockPlan& plan, const std::vector<std::size_t>& order) {
    PartialBank total(plan.n);
    for (std::size_t k : order) total.merge(job_product(plan, plan.jobs.at(k)));
    return total.to_matrix();
}

std::string plan_to_json(const BlockPlan& plan) {
    auto groups = [](const std::vector<BlockGroup>& gs) {
        nlohmann::json arr = nlohmann::json::array();
        for (const BlockGroup& g : gs) {
            nlohmann::json segs = nlohmann::json::array();
            for (const DiagSegment& s : g.segments)
                segs.push_back({{"offset", s.offset}, {"row_start", s.row_start}, {"length", s.length()}});
            arr.push_back({{"id", g.group_id}, {"window", g.window}, {"chunk", g.chunk}, {"segments", std::move(segs)}});
        }
        return arr;
    };
    nlohmann::json j;
    j["n"] = plan.n;
    j["grid"] = {{"rows", plan.grid_rows}, {"cols", plan.grid_cols}};
    j["cuts"] = plan.cuts;
    j["a_groups"] = groups(plan.a_groups);
    j["b_groups"] = groups(plan.b_groups);
    nlohmann::json jobs = nlohmann::json::array();
    for (const BlockJob& job : plan.jobs) jobs.push_back({{"a", job.a_group}, {"b", job.b_group}});
    j["jobs"] = std::move(jobs);
    return j.dump(2) + "\n";
}

}  // namespace diamond
