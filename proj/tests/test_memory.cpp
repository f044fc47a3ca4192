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


#include <doctest.h>

#include <random>

#include "diamond/accelerator.hpp"
#include "test_util.hpp"

using namespace diamond;

namespace {

LineId line(std::int64_t id) { return LineId{LineKind::a_group, id}; }

/// Brute-force LRU with timestamps.
struct OracleCache {
    struct Entry {
        std::int64_t id;
        bool dirty;
        std::uint64_t used;
    };
    CacheConfig cfg;
    std::vector<std::vector<Entry>> sets;
    std::uint64_t clock = 0;
    MemStats stats;

    explicit OracleCache(CacheConfig c) : cfg(c), sets(static_cast<std::size_t>(c.sets)) {}

    int access(std::int64_t id, bool write) {
        auto& set = sets[static_cast<std::size_t>(id % cfg.sets)];
        ++clock;
        for (Entry& e : set)
            if (e.id == id) {
                e.used = clock;
                e.dirty = e.dirty || write;
                ++stats.hits;
                stats.stall_cycles += static_cast<std::uint64_t>(cfg.hit_cycles);
                return cfg.hit_cycles;
            }
        ++stats.misses;
        ++stats.dram_reads;
        int latency = cfg.miss_penalty_cycles + cfg.dram_cycles;
        if (static_cast<int>(set.size()) == cfg.ways) {
            auto victim = std::min_element(set.begin(), set.end(),
                                           [](const Entry& x, const Entry& y) { return x.used < y.used; });
            if (victim->dirty) {
                ++stats.dram_writes;
                latency += cfg.dram_cycles;
            }
            set.erase(victim);
        }
        set.push_back(Entry{id, write, clock});
        stats.stall_cycles += static_cast<std::uint64_t>(latency);
        return latency;
    }
};

}  // namespace

TEST_CASE("cold miss, hit and dirty eviction latencies") {
    Cache cache;
    CHECK(cache.access(line(0), Access::read) == 55);
    CHECK(cache.access(line(0), Access::read) == 1);
    CHECK(cache.access(line(2), Access::write) == 55);
    CHECK(cache.access(line(4), Access::read) == 55);   // evicts clean line 0
    CHECK(cache.access(line(6), Access::read) == 105);  // evicts dirty line 2
    CHECK(cache.stats().hits == 1);
    CHECK(cache.stats().misses == 4);
    CHECK(cache.stats().dram_reads == 4);
    CHECK(cache.stats().dram_writes == 1);
    CHECK(cache.stats().stall_cycles == 55 + 1 + 55 + 55 + 105);
    CHECK(cache.contains(4));
    CHECK_FALSE(cache.contains(2));
    CHECK(cache.flush() == 0);
}

TEST_CASE("three lines in a two-way set thrash") {
    Cache cache(CacheConfig{1, 2, 1, 5, 50});
    for (int round = 0; round < 10; ++round)
        for (std::int64_t id = 0; id < 3; ++id) cache.access(line(id), Access::read);
    CHECK(cache.stats().hits == 0);
    CHECK(cache.stats().misses == 30);
}

TEST_CASE("flush writes back dirty lines once") {
    Cache cache;
    cache.access(line(0), Access::write);
    cache.access(line(1), Access::write);
    cache.access(line(3), Access::read);
    CHECK(cache.flush() == 100);
    CHECK(cache.stats().dram_writes == 2);
    CHECK(cache.flush() == 0);
}

TEST_CASE("invalid configurations") {
    CHECK_THROWS_AS(Cache(CacheConfig{0, 2, 1, 5, 50}), UsageError);
    CHECK_THROWS_AS(Cache(CacheConfig{2, 0, 1, 5, 50}), UsageError);
    CHECK_THROWS_AS(Cache(CacheConfig{2, 2, -1, 5, 50}), UsageError);
    Cache cache;
    CHECK_THROWS_AS(cache.access(line(-1), Access::read), DomainError);
}

TEST_CASE("cache matches a brute-force LRU model") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const CacheConfig cfg{std::uniform_int_distribution<int>(1, 4)(rng), std::uniform_int_distribution<int>(1, 4)(rng),
                              1, 5, 50};
        Cache cache(cfg);
        OracleCache oracle(cfg);
        const int lines = std::uniform_int_distribution<int>(1, 20)(rng);
        std::uniform_int_distribution<int> pick(0, lines - 1);
        for (int k = 0; k < 2000; ++k) {
            const std::int64_t id = pick(rng);
            const bool write = rng() % 3 == 0;
            REQUIRE(cache.access(line(id), write ? Access::write : Access::read) == oracle.access(id, write));
        }
        CHECK(cache.stats().hits == oracle.stats.hits);
        CHECK(cache.stats().dram_writes == oracle.stats.dram_writes);
        CHECK(cache.stats().stall_cycles == oracle.stats.stall_cycles);
    }
}

TEST_CASE("line registry ids are stable") {
    LineRegistry reg;
    CHECK(reg.id(0, 0, 0) == 0);
    CHECK(reg.id(1, 0, 0) == 1);
    CHECK(reg.id(0, 0, 1) == 2);
    CHECK(reg.id(0, 0, 0) == 0);
    CHECK(reg.size() == 3);
}

TEST_CASE("one job charges C + R reads and one write per output diagonal") {
    std::mt19937_64 rng(12);
    const DiagMatrix a = testing::random_matrix(rng, 8, std::vector<Index>{-1, 0, 1});
    const DiagMatrix b = testing::random_matrix(rng, 8, std::vector<Index>{0, 1});
    PlanConfig pc;
    pc.cuts_given = true;
    const BlockPlan plan = make_plan(a, b, pc);
    REQUIRE(plan.jobs.size() == 1);
    CHECK(job_output_offsets(plan, plan.jobs[0]) == std::vector<Index>{-1, 0, 1, 2});

    Cache cache;
    LineRegistry reg;
    const MemStats s = charge_job(plan, 0, cache, reg, MatrixTags{}, {-1, 0, 1, 2}, 32);
    // lines: A -> 0 (set 0), B -> 1 (set 1), C -> 2 (set 0)
    CHECK(s.misses == 3);
    CHECK(s.hits == 2 + 1 + 3);
    CHECK(s.dram_writes == 0);
    CHECK(cache.flush() == 50);
}

TEST_CASE("output chunks split by A group size") {
    std::mt19937_64 rng(13);
    const DiagMatrix a = testing::random_matrix(rng, 16, std::vector<Index>{-1, 0, 1});
    const DiagMatrix b = testing::random_matrix(rng, 16, std::vector<Index>{0});
    PlanConfig pc;
    pc.cuts_given = true;
    pc.grid_rows = pc.grid_cols = 2;
    const BlockPlan plan = make_plan(a, b, pc);
    REQUIRE(plan.jobs.size() == 2);
    Cache cache(CacheConfig{8, 4, 1, 5, 50});
    LineRegistry reg;
    charge_job(plan, 0, cache, reg, MatrixTags{}, {-1, 0, 1}, 2);
    charge_job(plan, 1, cache, reg, MatrixTags{}, {-1, 0, 1}, 2);
    // A chunks 0 and 1, B chunk 0, C chunks 0 and 1
    CHECK(reg.size() == 5);
    CHECK(cache.stats().misses == 5);
}

TEST_CASE("a repeated product on warm lines never misses") {
    std::mt19937_64 rng(14);
    const DiagMatrix a = testing::random_matrix(rng, 16, 4);
    const DiagMatrix b = testing::random_matrix(rng, 16, 3);
    Accelerator acc;
    const ProductResult first = acc.multiply(a, b);
    const ProductResult second = acc.multiply(a, b);
    CHECK(first.mem.misses == 3);
    CHECK(second.mem.misses == 0);
    CHECK(second.mem.hit_rate() == 1.0);
    CHECK(acc.flush().dram_writes == 1);
}
