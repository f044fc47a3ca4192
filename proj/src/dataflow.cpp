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

#include "diamond/dataflow.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace diamond {

namespace {

Scalar cmul(const Scalar& a, const Scalar& b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

Index inner_first(const DiagSegment& s, Side side) { return s.inner_start(side == Side::A); }

Index job_base(const std::vector<DiagSegment>& a, const std::vector<DiagSegment>& b) {
    Index base = std::numeric_limits<Index>::max();
    for (const auto& s : a) base = std::min(base, inner_first(s, Side::A));
    for (const auto& s : b) base = std::min(base, inner_first(s, Side::B));
    return base;
}

void check_segments(const std::vector<DiagSegment>& segs) {
    for (const auto& s : segs)
        if (s.values.empty()) throw SimulatorError("empty segment handed to the grid");
}

}  // namespace

FeedConfig parse_feed(const std::string& text) {
    FeedConfig feed;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const auto eq = part.find('=');
        if (eq == std::string::npos) throw UsageError("feed entries look like a=asc or b=desc, got '" + part + "'");
        const std::string key = part.substr(0, eq), val = part.substr(eq + 1);
        FeedOrder order;
        if (val == "asc" || val == "ascending") order = FeedOrder::ascending;
        else if (val == "desc" || val == "descending") order = FeedOrder::descending;
        else throw UsageError("feed order must be asc or desc, got '" + val + "'");
        if (key == "a") feed.a_order = order;
        else if (key == "b") feed.b_order = order;
        else throw UsageError("feed side must be a or b, got '" + key + "'");
    }
    return feed;
}

std::string feed_to_string(const FeedConfig& feed) {
    auto name = [](FeedOrder o) { return o == FeedOrder::ascending ? "asc" : "desc"; };
    return std::string("a=") + name(feed.a_order) + ",b=" + name(feed.b_order);
}

DpeDecision decide(const DpeState& dpe) {
    DpeDecision d;
    if (dpe.a && dpe.b) {
        if (dpe.a->j == dpe.b->i) {
            d.multiply = d.forward_a = d.forward_b = true;
        } else if (dpe.a->j < dpe.b->i) {
            d.forward_a = true;
        } else {
            d.forward_b = true;
        }
    } else {
        d.forward_a = dpe.a.has_value();
        d.forward_b = dpe.b.has_value();
    }
    return d;
}

StageCycles& StageCycles::operator+=(const StageCycles& o) {
    preload += o.preload;
    compute += o.compute;
    popout += o.popout;
    total += o.total;
    return *this;
}

DataflowEvents& DataflowEvents::operator+=(const DataflowEvents& o) {
    multiplies += o.multiplies;
    fifo_reads += o.fifo_reads;
    fifo_writes += o.fifo_writes;
    accumulator_writes += o.accumulator_writes;
    mismatches += o.mismatches;
    active_dpe_cycles += o.active_dpe_cycles;
    return *this;
}

std::vector<DiagSegment> in_feed_order(std::vector<DiagSegment> segments, FeedOrder order) {
    std::stable_sort(segments.begin(), segments.end(), [order](const DiagSegment& x, const DiagSegment& y) {
        return order == FeedOrder::ascending ? x.offset < y.offset : x.offset > y.offset;
    });
    return segments;
}

// ---------------------------------------------------------------------------
// DpeGrid
// ---------------------------------------------------------------------------

DpeGrid::DpeGrid(Index n, const std::vector<DiagSegment>& a_segments, const std::vector<DiagSegment>& b_segments,
                 const FeedConfig& feed, int max_rows, int max_cols)
    : n_(n) {
    if (static_cast<Index>(a_segments.size()) > max_cols || static_cast<Index>(b_segments.size()) > max_rows)
        throw SimulatorError("job needs a " + std::to_string(b_segments.size()) + "x" + std::to_string(a_segments.size()) +
                             " grid but only " + std::to_string(max_rows) + "x" + std::to_string(max_cols) + " exists");
    check_segments(a_segments);
    check_segments(b_segments);
    rows_ = static_cast<int>(b_segments.size());
    cols_ = static_cast<int>(a_segments.size());
    if (rows_ == 0 || cols_ == 0) {
        rows_ = cols_ = 0;
        return;
    }

    const Index base = job_base(a_segments, b_segments);
    auto build = [&](const std::vector<DiagSegment>& segs, FeedOrder order, Side side, std::vector<FeedStream>& out) {
        Index p = 1;
        for (DiagSegment& s : in_feed_order(segs, order)) {
            FeedStream f;
            f.offset = s.offset;
            f.row_start = s.row_start;
            f.start_cycle = p + (inner_first(s, side) - base);
            f.values = std::move(s.values);
            last_scheduled_ = std::max(last_scheduled_, f.start_cycle + f.length() - 1);
            out.push_back(std::move(f));
            ++p;
        }
    };
    build(a_segments, feed.a_order, Side::A, a_streams_);
    build(b_segments, feed.b_order, Side::B, b_streams_);

    const auto cells = static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_);
    cur_.assign(cells, DpeState{});
    nxt_.assign(cells, DpeState{});
    // Stream heads, alignment bubbles included, enter at their feed position
    // and reach the far corner after rows + cols - 1 cycles.
    preload_ = rows_ + cols_ - 1;
}

void DpeGrid::place(std::vector<DpeState>& grid, int r, int c, const Operand& op) {
    DpeState& s = grid[index(r, c)];
    std::optional<Operand>& slot = op.side == Side::A ? s.a : s.b;
    if (slot) {
        throw SimulatorError("FIFO overwrite at DPE(" + std::to_string(r) + "," + std::to_string(c) + ") cycle " +
                             std::to_string(cycle_) + " side " + (op.side == Side::A ? "A" : "B"));
    }
    slot = op;
}

std::vector<PartialProduct> DpeGrid::step() {
    std::vector<PartialProduct> products;
    if (rows_ == 0) return products;
    ++cycle_;

    // Index builder: the k-th element of a stream enters at start_cycle + k.
    for (int c = 0; c < cols_; ++c) {
        const FeedStream& f = a_streams_[static_cast<std::size_t>(c)];
        const Index k = cycle_ - f.start_cycle;
        if (k < 0 || k >= f.length()) continue;
        const Index i = f.row_start + k;
        place(cur_, 0, c, Operand{f.values[static_cast<std::size_t>(k)], i, i + f.offset, Side::A});
        ++events_.fifo_writes;
        last_injection_ = cycle_;
    }
    for (int r = 0; r < rows_; ++r) {
        const FeedStream& f = b_streams_[static_cast<std::size_t>(r)];
        const Index k = cycle_ - f.start_cycle;
        if (k < 0 || k >= f.length()) continue;
        const Index i = f.row_start + k;
        place(cur_, r, 0, Operand{f.values[static_cast<std::size_t>(k)], i, i + f.offset, Side::B});
        ++events_.fifo_writes;
        last_injection_ = cycle_;
    }

    bool any = false;
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) {
            const std::size_t at = index(r, c);
            DpeState& s = cur_[at];
            if (!s.a && !s.b) continue;
            any = true;

            const DpeDecision d = decide(s);
            if (s.a && s.b && !d.multiply) ++events_.mismatches;
            if (d.multiply) {
                const Index dc = s.b->j - s.a->i;
                products.push_back(PartialProduct{cmul(s.a->value, s.b->value), s.a->i, s.b->j, dc, r, c});
                ++events_.multiplies;
                // product through the output FIFO
                events_.fifo_writes += 1;
                events_.fifo_reads += 1;
            }
            if (trace_) {
                TraceEvent ev{cycle_, r, c, "", s.a ? s.a->j : -1, s.b ? s.b->i : -1};
                if (d.multiply) ev.action = "multiply";
                else if (s.a && !d.forward_a) ev.action = "retain_a";
                else if (s.b && !d.forward_b) ev.action = "retain_b";
                else ev.action = s.a && s.b ? "forward_both" : (s.a ? "forward_a" : "forward_b");
                trace_(ev);
            }
            if (s.a) {
                if (d.forward_a) {
                    ++events_.fifo_reads;
                    if (r + 1 < rows_) {
                        place(nxt_, r + 1, c, *s.a);
                        ++events_.fifo_writes;
                    }
                } else {
                    place(nxt_, r, c, *s.a);
                }
            }
            if (s.b) {
                if (d.forward_b) {
                    ++events_.fifo_reads;
                    if (c + 1 < cols_) {
                        place(nxt_, r, c + 1, *s.b);
                        ++events_.fifo_writes;
                    }
                } else {
                    place(nxt_, r, c, *s.b);
                }
            }
            s.a.reset();
            s.b.reset();
        }
    }
    if (any) last_held_ = cycle_;
    std::swap(cur_, nxt_);
    occupied_ = 0;
    for (const DpeState& s : cur_) occupied_ += (s.a ? 1 : 0) + (s.b ? 1 : 0);
    events_.accumulator_writes += products.size();
    return products;
}

bool DpeGrid::finished() const { return rows_ == 0 || (cycle_ >= last_scheduled_ && occupied_ == 0); }

StageCycles DpeGrid::stages() const {
    StageCycles s;
    if (rows_ == 0 || last_held_ == 0) return s;
    s.total = last_held_ + 1;
    s.preload = preload_;
    const Index tff = last_injection_ + 1;
    s.compute = tff - s.preload;
    s.popout = s.total - tff;
    return s;
}

// ---------------------------------------------------------------------------
// Jobs
// ---------------------------------------------------------------------------

namespace {

void deliver(PartialBank& bank, const PartialProduct& p) {
    std::vector<Scalar>& acc = bank.diagonal(p.d_c);
    acc[static_cast<std::size_t>(p.i - first_row(p.d_c))] += p.value;
}

// Single A and single B diagonal spread over `lanes` independent 1x1 DPEs:
// element k (counted from the job base) goes to lane k mod lanes and sits
// there at cycle (k mod lanes) + (k / lanes) + 1.
JobResult run_pipelined(const DiagSegment& a, const DiagSegment& b, int lanes, PartialBank& bank) {
    JobResult res;
    const Index base = std::min(a.inner_start(true), b.inner_start(false));
    const Index a0 = a.inner_start(true) - base, a1 = a0 + a.length();
    const Index b0 = b.inner_start(false) - base, b1 = b0 + b.length();
    const auto arrival = [lanes](Index k) { return k % lanes + k / lanes + 1; };

    std::vector<bool> used(static_cast<std::size_t>(lanes), false);
    Index last = 0;
    for (Index k = std::min(a0, b0); k < std::max(a1, b1); ++k) {
        const bool has_a = k >= a0 && k < a1, has_b = k >= b0 && k < b1;
        if (!has_a && !has_b) continue;
        const auto lane = static_cast<std::size_t>(k % lanes);
        const Index t = arrival(k);
        used[lane] = true;
        last = std::max(last, t);
        if (has_a) {
            res.events.fifo_writes += 1;
            res.events.fifo_reads += 1;
        }
        if (has_b) {
            res.events.fifo_writes += 1;
            res.events.fifo_reads += 1;
        }
        if (has_a && has_b) {
            const Index i = a.row_start + (k - a0);
            const Index j = b.row_start + (k - b0) + b.offset;
            const Scalar va = a.values[static_cast<std::size_t>(k - a0)];
            const Scalar vb = b.values[static_cast<std::size_t>(k - b0)];
            deliver(bank, PartialProduct{cmul(va, vb), i, j, a.offset + b.offset, 0, static_cast<int>(lane)});
            ++res.events.multiplies;
            ++res.events.accumulator_writes;
            res.events.fifo_writes += 1;
            res.events.fifo_reads += 1;
        }
    }
    Index preload = 0;
    std::uint64_t active = 0;
    for (std::size_t l = 0; l < used.size(); ++l) {
        if (!used[l]) continue;
        ++active;
        preload = static_cast<Index>(l) + 1;
    }
    res.rows = 1;
    res.cols = lanes;
    res.active_dpes = active;
    res.cycles.total = last + 1;
    res.cycles.preload = preload;
    res.cycles.compute = res.cycles.total - preload;
    res.cycles.popout = 0;
    res.events.active_dpe_cycles = active * static_cast<std::uint64_t>(res.cycles.total);
    return res;
}

}  // namespace

JobResult run_job(Index n, const std::vector<DiagSegment>& a_segments, const std::vector<DiagSegment>& b_segments,
                  const FeedConfig& feed, PartialBank& bank, const RunOptions& options) {
    if (bank.dim() != n) throw ShapeError("accumulator bank dimension differs from the job");
    if (a_segments.empty() || b_segments.empty()) return JobResult{};
    if (options.pipeline_lanes < 1) throw UsageError("pipeline lanes must be positive");
    if (options.pipeline_lanes > 1 && a_segments.size() == 1 && b_segments.size() == 1) {
        if (options.pipeline_lanes > options.max_cols)
            throw SimulatorError("pipelined layout needs more columns than the grid has");
        return run_pipelined(a_segments.front(), b_segments.front(), options.pipeline_lanes, bank);
    }

    DpeGrid grid(n, a_segments, b_segments, feed, options.max_rows, options.max_cols);
    if (options.trace) grid.set_trace(options.trace);

    Index longest = 0;
    for (const auto& s : grid.a_streams()) longest = std::max(longest, s.length());
    for (const auto& s : grid.b_streams()) longest = std::max(longest, s.length());
    Index last_start = 0;
    for (const auto& s : grid.a_streams()) last_start = std::max(last_start, s.start_cycle);
    for (const auto& s : grid.b_streams()) last_start = std::max(last_start, s.start_cycle);
    const Index limit = last_start + longest + grid.rows() + grid.cols() + 1;

    while (!grid.finished()) {
        for (const PartialProduct& p : grid.step()) deliver(bank, p);
        if (grid.cycle() > limit)
            throw SimulatorError("grid made no progress within " + std::to_string(limit) + " cycles");
    }

    JobResult res;
    res.cycles = grid.stages();
    res.events = grid.events();
    res.rows = grid.rows();
    res.cols = grid.cols();
    res.active_dpes = static_cast<std::uint64_t>(grid.rows()) * static_cast<std::uint64_t>(grid.cols());
    res.events.active_dpe_cycles = res.active_dpes * static_cast<std::uint64_t>(res.cycles.total);
    return res;
}

StageCycles predict_cycles(Index rows, Index cols, Side longest_side, Index longest_length, Index longest_position) {
    (void)longest_side;  // the position is R_dmax or C_dmax depending on the side; the formulas coincide
    StageCycles s;
    if (rows <= 0 || cols <= 0 || longest_length <= 0) return s;
    s.preload = rows + cols - 1;
    const Index tff = longest_length + longest_position;
    const Index tpf = longest_length + rows + cols - 1;
    s.compute = tff - s.preload;
    s.popout = tpf - tff;
    s.total = tpf;
    return s;
}

StageCycles predict_job_cycles(const std::vector<DiagSegment>& a_segments, const std::vector<DiagSegment>& b_segments,
                               const FeedConfig& feed) {
    StageCycles s;
    if (a_segments.empty() || b_segments.empty()) return s;
    const Index base = job_base(a_segments, b_segments);
    const auto rows = static_cast<Index>(b_segments.size());
    const auto cols = static_cast<Index>(a_segments.size());
    Index total = 0, preload = 0, last_inject = 0;
    auto scan = [&](const std::vector<DiagSegment>& segs, FeedOrder order, Side side, Index travel) {
        Index p = 1;
        for (const DiagSegment& seg : in_feed_order(segs, order)) {
            const Index start = p + (inner_first(seg, side) - base);
            const Index end = start + seg.length() - 1;
            total = std::max(total, end + travel + 1);
            preload = std::max(preload, p + travel);
            last_inject = std::max(last_inject, end);
            ++p;
        }
    };
    scan(a_segments, feed.a_order, Side::A, rows - 1);
    scan(b_segments, feed.b_order, Side::B, cols - 1);
    s.total = total;
    s.preload = preload;
    s.compute = last_inject + 1 - preload;
    s.popout = total - (last_inject + 1);
    return s;
}

bool is_stall_free(const std::vector<DiagSegment>& a_segments, const std::vector<DiagSegment>& b_segments) {
    if (a_segments.empty() || b_segments.empty()) return true;
    const Index base = job_base(a_segments, b_segments);
    for (const auto& s : a_segments)
        if (inner_first(s, Side::A) != base) return false;
    for (const auto& s : b_segments)
        if (inner_first(s, Side::B) != base) return false;
    return true;
}

Index minkowski_mapping(const FeedConfig& feed, const std::vector<Index>& a_offsets, const std::vector<Index>& b_offsets,
                        int row, int col) {
    if (row < 0 || col < 0 || static_cast<std::size_t>(row) >= b_offsets.size() ||
        static_cast<std::size_t>(col) >= a_offsets.size())
        throw DomainError("DPE position outside the grid");
    auto ordered = [](std::vector<Index> v, FeedOrder o) {
        std::sort(v.begin(), v.end());
        if (o == FeedOrder::descending) std::reverse(v.begin(), v.end());
        return v;
    };
    return ordered(a_offsets, feed.a_order)[static_cast<std::size_t>(col)] +
           ordered(b_offsets, feed.b_order)[static_cast<std::size_t>(row)];
}

}  // namespace diamond
