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

#include "diamond/memory.hpp"

#include <algorithm>

namespace diamond {

void CacheConfig::validate() const {
    if (sets < 1 || ways < 1) throw UsageError("cache needs at least one set and one way");
    if (hit_cycles < 0 || miss_penalty_cycles < 0 || dram_cycles < 0)
        throw UsageError("cache latencies must be non-negative");
}

MemStats& MemStats::operator+=(const MemStats& o) {
    hits += o.hits;
    misses += o.misses;
    dram_reads += o.dram_reads;
    dram_writes += o.dram_writes;
    stall_cycles += o.stall_cycles;
    return *this;
}

MemStats MemStats::operator-(const MemStats& o) const {
    return MemStats{hits - o.hits, misses - o.misses, dram_reads - o.dram_reads, dram_writes - o.dram_writes,
                    stall_cycles - o.stall_cycles};
}

Cache::Cache(CacheConfig cfg) : cfg_(cfg) {
    cfg_.validate();
    sets_.resize(static_cast<std::size_t>(cfg_.sets));
}

int Cache::access(const LineId& line, Access rw) {
    if (line.group_id < 0) throw DomainError("line ids are non-negative");
    auto& set = sets_[static_cast<std::size_t>(line.group_id % cfg_.sets)];
    auto it = std::find_if(set.begin(), set.end(), [&](const Way& w) { return w.id == line.group_id; });
    int latency = 0;
    if (it != set.end()) {
        ++stats_.hits;
        latency = cfg_.hit_cycles;
        Way w = *it;
        set.erase(it);
        w.dirty = w.dirty || rw == Access::write;
        set.push_front(w);
    } else {
        ++stats_.misses;
        ++stats_.dram_reads;
        latency = cfg_.miss_penalty_cycles + cfg_.dram_cycles;
        if (static_cast<int>(set.size()) == cfg_.ways) {
            if (set.back().dirty) {
                ++stats_.dram_writes;
                latency += cfg_.dram_cycles;
            }
            set.pop_back();
        }
        set.push_front(Way{line.group_id, rw == Access::write});
    }
    stats_.stall_cycles += static_cast<std::uint64_t>(latency);
    return latency;
}

std::uint64_t Cache::flush() {
    std::uint64_t cycles = 0;
    for (auto& set : sets_)
        for (Way& w : set)
            if (w.dirty) {
                w.dirty = false;
                ++stats_.dram_writes;
                cycles += static_cast<std::uint64_t>(cfg_.dram_cycles);
            }
    stats_.stall_cycles += cycles;
    return cycles;
}

bool Cache::contains(std::int64_t group_id) const {
    const auto& set = sets_[static_cast<std::size_t>(group_id % cfg_.sets)];
    return std::any_of(set.begin(), set.end(), [&](const Way& w) { return w.id == group_id; });
}

std::int64_t LineRegistry::id(std::int64_t tag, int window, int chunk) {
    auto [it, fresh] = ids_.try_emplace({tag, window, chunk}, static_cast<std::int64_t>(ids_.size()));
    return it->second;
}

}  // namespace diamond
