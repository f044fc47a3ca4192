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
 * @file report.hpp
 * @brief Event counters, energy proxy and the versioned report format.
 *
 * Report JSON, schema 1:
 *   {schema, workload, grid:{rows,cols},
 *    cycles:{preload,compute,popout,total},
 *    events:{multiplies,fifo_rw,cache_hits,cache_misses,dram_reads,dram_writes},
 *    hit_rate, energy_pj, active_dpes, stall_cycles, iterations:[...]}
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "diamond/hamsim.hpp"

namespace diamond {

/// Picojoules per event. Defaults divide block power (mW) by a 700 MHz clock.
struct EnergyModel {
    static constexpr double kClockMhz = 700.0;
    static constexpr double kDpePowerMw = 4.3877;
    static constexpr double kMultiplierPowerMw = 1.6354;
    static constexpr double kFifoPowerMw = 0.7568;

    double dpe_active_cycle = kDpePowerMw / kClockMhz * 1000.0;
    double multiply = kMultiplierPowerMw / kClockMhz * 1000.0;
    double fifo_rw = kFifoPowerMw / kClockMhz * 1000.0;
    double cache_access = kFifoPowerMw / kClockMhz * 1000.0;
    double dram_access = 50.0 * kFifoPowerMw / kClockMhz * 1000.0;

    void validate() const;
};

struct EventCounters {
    std::uint64_t active_dpe_cycles = 0;
    std::uint64_t multiplies = 0;
    std::uint64_t fifo_rw = 0;
    std::uint64_t cache_accesses = 0;
    std::uint64_t dram_accesses = 0;
};

EventCounters counters_from(const DataflowEvents& events, const MemStats& mem);

double energy(const EventCounters& counters, const EnergyModel& model = {});

struct SimReport {
    std::string workload;
    int grid_rows = 0;
    int grid_cols = 0;
    StageCycles cycles;
    DataflowEvents events;
    MemStats mem;
    std::uint64_t active_dpes = 0;
    double energy_pj = 0.0;
    Index n = 0;
    std::vector<IterationRecord> iterations;
};

SimReport make_report(const std::string& workload, const ProductResult& product, const MemStats& flush,
                      const EnergyModel& model = {});
SimReport make_report(const std::string& workload, const TaylorResult& taylor, Index n, const EnergyModel& model = {});

std::string report_to_json(const SimReport& report);
/// Flatten a report JSON document: one header line plus one row per
/// iteration (or a single summary row when there are none).
std::string report_json_to_csv(const std::string& json_text);
/// k, nnzd, nnze, savings, cycles_total, hit_rate.
std::string iterations_to_csv(const std::vector<IterationRecord>& records);

}  // namespace diamond
