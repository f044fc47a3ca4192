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
 * @file blocking.hpp
 * @brief Splitting one SpMSpM into grid-sized (A-group, B-group) jobs.
 *
 * Row/col blocking cuts A by column and B by row at the same indices, so a
 * product A(i,k) B(k,j) only pairs segments from the same window. Diagonal
 * blocking then chunks each window's diagonals to fit the grid: at most
 * grid_cols A segments and grid_rows B segments per job.
 *
 * Windows are 0-based half-open [cut_{w-1}, cut_w). Jobs are ordered by
 * window, then B group, then A group.
 */

#pragma once

#include <map>
#include <string>
#include <vector>

#include "diamond/diag_matrix.hpp"

namespace diamond {

/// Contiguous slice of one diagonal starting at matrix row row_start.
struct DiagSegment {
    Index offset = 0;
    Index row_start = 0;
    std::vector<Scalar> values;

    Index length() const { return static_cast<Index>(values.size()); }
    Index row_end() const { return row_start + length(); }  // exclusive
    /// Index shared with the other operand: A's column, B's row.
    Index inner_start(bool a_side) const { return a_side ? row_start + offset : row_start; }
};

enum class Side { A, B };

struct BlockGroup {
    int group_id = 0;   // unique within its side
    Side kind = Side::A;
    int window = 0;
    int chunk = 0;      // position among the window's chunks
    std::vector<DiagSegment> segments;  // ascending offset
};

struct BlockJob {
    int a_group = 0;    // index into BlockPlan::a_groups
    int b_group = 0;
};

struct BlockPlan {
    Index n = 0;
    int grid_rows = 0;
    int grid_cols = 0;
    std::vector<Index> cuts;
    std::vector<BlockGroup> a_groups;
    std::vector<BlockGroup> b_groups;
    std::vector<BlockJob> jobs;
};

struct PlanConfig {
    int grid_rows = 32;
    int grid_cols = 32;
    /// Empty: default_cuts(N).
    std::vector<Index> cuts;
    bool cuts_given = false;
    /// Diagonals per group; 0 means the grid dimension on that side.
    int a_group_size = 0;
    int b_group_size = 0;
};

/// No cuts up to N = 4096, windows of 4096 beyond.
std::vector<Index> default_cuts(Index n);

/// Throws PlanError unless cuts are strictly ascending inside [1, N-1].
void validate_cuts(Index n, const std::vector<Index>& cuts);

/// One group per window on each side: A by column window, B by row window.
/// Windows in which a matrix has no entries yield a group with no segments.
std::pair<std::vector<BlockGroup>, std::vector<BlockGroup>> partition_rowcol(const DiagMatrix& a, const DiagMatrix& b,
                                                                           const std::vector<Index>& cuts);

/// Chunk a group's segments into runs of at most group_size diagonals.
std::vector<BlockGroup> partition_diagonals(const BlockGroup& group, int group_size);
/// Convenience overload on a whole matrix (single window).
std::vector<BlockGroup> partition_diagonals(const DiagMatrix& m, Side kind, int group_size);

BlockPlan make_plan(const DiagMatrix& a, const DiagMatrix& b, const PlanConfig& cfg);

/// Running sums keyed by output offset; each vector spans the full diagonal.
class PartialBank {
public:
    explicit PartialBank(Index n) : n_(n) {}
    Index dim() const { return n_; }
    std::vector<Scalar>& diagonal(Index dc);
    const std::map<Index, std::vector<Scalar>>& diagonals() const { return diags_; }
    /// this += other, offset by offset in ascending order.
    void merge(const PartialBank& other);
    /// Exact-zero diagonals dropped.
    DiagMatrix to_matrix() const;

private:
    Index n_;
    std::map<Index, std::vector<Scalar>> diags_;
};

/// Functional product of one job's segments, pairs in ascending (dA, dB).
PartialBank job_product(const BlockPlan& plan, const BlockJob& job);

/// Merge of every job product, in plan order or in the supplied order.
DiagMatrix execute_plan(const BlockPlan& plan);
DiagMatrix execute_plan(const BlockPlan& plan, const std::vector<std::size_t>& order);

/// Job list and group membership as JSON text.
std::string plan_to_json(const BlockPlan& plan);

}  // namespace diamond
