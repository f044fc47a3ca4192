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
 * @file dataflow.hpp
 * @brief Cycle-level model of the DPE grid.
 *
 * Columns carry A segments downward, rows carry B segments rightward. Each
 * DPE holds at most one operand per side and applies the comparator rule:
 *
 *   both present, j_A == i_B   multiply, forward both
 *   both present, j_A != i_B   keep the larger index, forward the other
 *   one present                forward it
 *   none                       idle
 *
 * Operands advance one DPE per cycle and leave the grid past the last
 * row / column. The index builder delays every stream by
 * (first inner index - smallest first inner index in the job), where the
 * inner index is A's column or B's row. An element with inner index x fed at
 * 1-based position p is then inside DPE(r, c) (1-based) at cycle
 *
 *   p + (x - base) + (distance travelled) ,
 *
 * so equal indices always meet in the same DPE on the same cycle.
 *
 * Cycles are 1-based. total is one past the last cycle any DPE holds an
 * operand (the final product reaches its accumulator then). preload is the
 * cycle the stream heads, alignment bubbles included, reach the far corner
 * DPE (R + C - 1). T_FF is one past the last injection,
 * compute = T_FF - preload, popout = total - T_FF.
 */

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "diamond/blocking.hpp"

namespace diamond {

enum class FeedOrder { ascending, descending };

struct FeedConfig {
    FeedOrder a_order = FeedOrder::ascending;
    FeedOrder b_order = FeedOrder::descending;
};

/// "a=asc,b=desc" and similar; UsageError on anything else.
FeedConfig parse_feed(const std::string& text);
std::string feed_to_string(const FeedConfig& feed);

struct Operand {
    Scalar value;
    Index i = 0;
    Index j = 0;
    Side side = Side::A;
};

struct DpeState {
    std::optional<Operand> a;
    std::optional<Operand> b;
};

/// What the comparator does with the operands it holds this cycle.
struct DpeDecision {
    bool multiply = false;
    bool forward_a = false;
    bool forward_b = false;
};

DpeDecision decide(const DpeState& dpe);

struct PartialProduct {
    Scalar value;
    Index i = 0;
    Index j = 0;
    Index d_c = 0;
    int row = 0;        // producing DPE, 0-based
    int col = 0;
};

struct StageCycles {
    Index preload = 0;
    Index compute = 0;
    Index popout = 0;
    Index total = 0;

    StageCycles& operator+=(const StageCycles& o);
    bool operator==(const StageCycles&) const = default;
};

struct DataflowEvents {
    std::uint64_t multiplies = 0;
    std::uint64_t fifo_reads = 0;
    std::uint64_t fifo_writes = 0;
    std::uint64_t accumulator_writes = 0;
    std::uint64_t mismatches = 0;
    std::uint64_t active_dpe_cycles = 0;

    std::uint64_t fifo_rw() const { return fifo_reads + fifo_writes; }
    DataflowEvents& operator+=(const DataflowEvents& o);
};

struct TraceEvent {
    Index cycle = 0;
    int row = 0;
    int col = 0;
    std::string action;     // "multiply", "forward_a", "forward_b", "retain_a", "retain_b"
    Index a_j = -1;
    Index b_i = -1;
};

using TraceSink = std::function<void(const TraceEvent&)>;

/// One operand stream entering the grid: a segment in feed position.
struct FeedStream {
    Index offset = 0;
    Index row_start = 0;
    Index start_cycle = 1;          // cycle the first element sits in the entry DPE
    std::vector<Scalar> values;

    Index length() const { return static_cast<Index>(values.size()); }
};

class DpeGrid {
public:
    /// Columns take A segments and rows take B segments, each in feed order.
    /// Throws SimulatorError when the segment counts exceed the grid.
    DpeGrid(Index n, const std::vector<DiagSegment>& a_segments, const std::vector<DiagSegment>& b_segments,
            const FeedConfig& feed, int max_rows = 32, int max_cols = 32);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Index cycle() const { return cycle_; }
    const std::vector<FeedStream>& a_streams() const { return a_streams_; }
    const std::vector<FeedStream>& b_streams() const { return b_streams_; }
    const DpeState& dpe(int r, int c) const { return cur_[index(r, c)]; }

    /// Output offset served by DPE(r, c).
    Index output_offset(int r, int c) const { return b_streams_[r].offset + a_streams_[c].offset; }

    /// Advance one cycle; returns the products formed.
    std::vector<PartialProduct> step();
    bool finished() const;

    void set_trace(TraceSink sink) { trace_ = std::move(sink); }

    StageCycles stages() const;
    const DataflowEvents& events() const { return events_; }

private:
    std::size_t index(int r, int c) const { return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c); }
    void place(std::vector<DpeState>& grid, int r, int c, const Operand& op);

    Index n_;
    int rows_ = 0;
    int cols_ = 0;
    std::vector<FeedStream> a_streams_;
    std::vector<FeedStream> b_streams_;
    std::vector<DpeState> cur_;
    std::vector<DpeState> nxt_;
    Index cycle_ = 0;
    Index preload_ = 0;
    Index last_injection_ = 0;
    Index last_held_ = 0;
    Index last_scheduled_ = 0;
    std::size_t occupied_ = 0;
    DataflowEvents events_;
    TraceSink trace_;
};

struct JobResult {
    StageCycles cycles;
    DataflowEvents events;
    int rows = 0;
    int cols = 0;
    std::uint64_t active_dpes = 0;
};

struct RunOptions {
    int max_rows = 32;
    int max_cols = 32;
    /// Lanes for single-diagonal jobs; 1 disables the pipelined layout.
    int pipeline_lanes = 1;
    TraceSink trace;
};

/// Run one job to completion, accumulating products into bank by d_C and row.
JobResult run_job(Index n, const std::vector<DiagSegment>& a_segments, const std::vector<DiagSegment>& b_segments,
                  const FeedConfig& feed, PartialBank& bank, const RunOptions& options = {});

/// Closed-form stage cycles for a stall-free job: preload R + C - 1,
/// T_FF = L + position, T_PF = L + R + C - 1, where position is the 1-based
/// feed position of the longest diagonal on its side.
StageCycles predict_cycles(Index rows, Index cols, Side longest_side, Index longest_length, Index longest_position);

/// Exact cycles for any job under index-aligned feeding, without simulating.
StageCycles predict_job_cycles(const std::vector<DiagSegment>& a_segments, const std::vector<DiagSegment>& b_segments,
                               const FeedConfig& feed);

/// True when every segment starts at the job's smallest inner index.
bool is_stall_free(const std::vector<DiagSegment>& a_segments, const std::vector<DiagSegment>& b_segments);

/// d_C for DPE(row, col) given the offsets in ascending order and the feed.
Index minkowski_mapping(const FeedConfig& feed, const std::vector<Index>& a_offsets, const std::vector<Index>& b_offsets,
                        int row, int col);

/// Segments reordered per the feed direction.
std::vector<DiagSegment> in_feed_order(std::vector<DiagSegment> segments, FeedOrder order);

}  // namespace diamond
