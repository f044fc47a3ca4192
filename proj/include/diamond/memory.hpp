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
 * @file memory.hpp
 * @brief Set-associative LRU cache of diagonal block groups over fixed-latency DRAM.
 *
 * A line holds one block group regardless of its size. Lines are identified
 * by a global id; set = id mod sets. The cache is write-allocate and
 * write-back: every miss reads DRAM, dirty victims and the final flush
 * write it.
 */

#pragma once

#include <cstdint>
#include <list>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "diamond/types.hpp"

namespace diamond {

struct CacheConfig {
    int sets = 2;
    int ways = 2;
    int hit_cycles = 1;
    int miss_penalty_cycles = 5;
    int dram_cycles = 50;

    void validate() const;
};

enum class LineKind { a_group, b_group, c_partial };

struct LineId {
    LineKind kind = LineKind::a_group;
    std::int64_t group_id = 0;

    bool operator==(const LineId& o) const { return group_id == o.group_id; }
};

enum class Access { read, write };

struct MemStats {
    std::uint64_t hits = 0;
    std::uint64_t misses = 0;
    std::uint64_t dram_reads = 0;
    std::uint64_t dram_writes = 0;
    std::uint64_t stall_cycles = 0;

    std::uint64_t accesses() const { return hits + misses; }
    double hit_rate() const { return accesses() == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(accesses()); }
    MemStats& operator+=(const MemStats& o);
    MemStats operator-(const MemStats& o) const;
};

class Cache {
public:
    explicit Cache(CacheConfig cfg = {});

    const CacheConfig& config() const { return cfg_; }
    const MemStats& stats() const { return stats_; }

    /// Latency of the access in cycles.
    int access(const LineId& line, Access rw);
    /// Write back every dirty line; returns the cycles spent.
    std::uint64_t flush();
    bool contains(std::int64_t group_id) const;

private:
    struct Way {
        std::int64_t id;
        bool dirty;
    };

    CacheConfig cfg_;
    std::vector<std::list<Way>> sets_;  // front = most recently used
    MemStats stats_;
};

/// Stable global line ids for (matrix tag, window, chunk) keys.
class LineRegistry {
public:
    std::int64_t id(std::int64_t tag, int window, int chunk);
    std::size_t size() const { return ids_.size(); }

private:
    std::map<std::tuple<std::int64_t, int, int>, std::int64_t> ids_;
};

}  // namespace diamond
