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

#include "diamond/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace diamond {

using nlohmann::json;

void EnergyModel::validate() const {
    for (double v : {dpe_active_cycle, multiply, fifo_rw, cache_access, dram_access})
        if (!(v >= 0.0)) throw UsageError("per-event energies must be non-negative");
}

EventCounters counters_from(const DataflowEvents& events, const MemStats& mem) {
    EventCounters c;
    c.active_dpe_cycles = events.active_dpe_cycles;
    c.multiplies = events.multiplies;
    c.fifo_rw = events.fifo_rw();
    c.cache_accesses = mem.accesses();
    c.dram_accesses = mem.dram_reads + mem.dram_writes;
    return c;
}

double energy(const EventCounters& c, const EnergyModel& m) {
    return static_cast<double>(c.active_dpe_cycles) * m.dpe_active_cycle +
           static_cast<double>(c.multiplies) * m.multiply + static_cast<double>(c.fifo_rw) * m.fifo_rw +
           static_cast<double>(c.cache_accesses) * m.cache_access + static_cast<double>(c.dram_accesses) * m.dram_access;
}

SimReport make_report(const std::string& workload, const ProductResult& product, const MemStats& flush,
                      const EnergyModel& model) {
    SimReport r;
    r.workload = workload;
    r.n = product.plan.n;
    r.grid_rows = product.plan.grid_rows;
    r.grid_cols = product.plan.grid_cols;
    r.cycles = product.cycles;
    r.events = product.events;
    r.mem = product.mem;
    r.mem += flush;
    r.active_dpes = product.max_active_dpes;
    r.energy_pj = energy(counters_from(r.events, r.mem), model);
    return r;
}

SimReport make_report(const std::string& workload, const TaylorResult& taylor, Index n, const EnergyModel& model) {
    SimReport r;
    r.workload = workload;
    r.n = n;
    r.grid_rows = taylor.grid_rows;
    r.grid_cols = taylor.grid_cols;
    r.cycles = taylor.cycles;
    r.events = taylor.events;
    r.mem = taylor.mem;
    for (const IterationRecord& rec : taylor.records) r.active_dpes = std::max(r.active_dpes, rec.max_active_dpes);
    r.iterations = taylor.records;
    r.energy_pj = energy(counters_from(r.events, r.mem), model);
    return r;
}

namespace {

json cycles_json(const StageCycles& c) {
    return {{"preload", c.preload}, {"compute", c.compute}, {"popout", c.popout}, {"total", c.total}};
}

json iteration_json(const IterationRecord& rec) {
    return {{"k", rec.k},
            {"nnzd", rec.nnzd},
            {"nnze", rec.nnze},
            {"nonzeros", rec.nonzeros},
            {"storage_scalars", rec.storage_scalars},
            {"savings", rec.savings},
            {"jobs", rec.jobs},
            {"active_dpes", rec.max_active_dpes},
            {"cycles", cycles_json(rec.stage_cycles)},
            {"multiplies", rec.events.multiplies},
            {"mem",
             {{"hits", rec.mem.hits},
              {"misses", rec.mem.misses},
              {"dram_reads", rec.mem.dram_reads},
              {"dram_writes", rec.mem.dram_writes},
              {"stall_cycles", rec.mem.stall_cycles}}},
            {"hit_rate", rec.mem.hit_rate()}};
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace

std::string report_to_json(const SimReport& r) {
    json j;
    j["schema"] = 1;
    j["workload"] = r.workload;
    j["n"] = r.n;
    j["grid"] = {{"rows", r.grid_rows}, {"cols", r.grid_cols}};
    j["cycles"] = cycles_json(r.cycles);
    j["events"] = {{"multiplies", r.events.multiplies}, {"fifo_rw", r.events.fifo_rw()},
                   {"cache_hits", r.mem.hits},          {"cache_misses", r.mem.misses},
                   {"dram_reads", r.mem.dram_reads},    {"dram_writes", r.mem.dram_writes}};
    j["hit_rate"] = r.mem.hit_rate();
    j["energy_pj"] = r.energy_pj;
    j["active_dpes"] = r.active_dpes;
    j["stall_cycles"] = r.mem.stall_cycles;
    j["serialized_cycles"] = static_cast<std::uint64_t>(r.cycles.total) + r.mem.stall_cycles;
    json iters = json::array();
    for (const IterationRecord& rec : r.iterations) iters.push_back(iteration_json(rec));
    j["iterations"] = std::move(iters);
    return j.dump(2) + "\n";
}

std::string iterations_to_csv(const std::vector<IterationRecord>& records) {
    std::ostringstream out;
    out << "k,nnzd,nnze,savings,cycles_total,hit_rate\n";
    for (const IterationRecord& r : records)
        out << r.k << ',' << r.nnzd << ',' << r.nnze << ',' << fmt(r.savings) << ',' << r.stage_cycles.total << ','
            << fmt(r.mem.hit_rate()) << '\n';
    return out.str();
}

std::string report_json_to_csv(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
        if (j.at("schema").get<int>() != 1) throw FormatError("unsupported report schema");
    } catch (const json::exception& e) {
        throw FormatError(std::string("not a report document: ") + e.what());
    }
    std::ostringstream out;
    try {
        const json& iters = j.at("iterations");
        if (!iters.empty()) {
            out << "workload,k,nnzd,nnze,savings,cycles_total,hit_rate\n";
            for (const json& it : iters)
                out << j.at("workload").get<std::string>() << ',' << it.at("k").get<int>() << ','
                    << it.at("nnzd").get<std::uint64_t>() << ',' << it.at("nnze").get<std::uint64_t>() << ','
                    << fmt(it.at("savings").get<double>()) << ',' << it.at("cycles").at("total").get<Index>() << ','
                    << fmt(it.at("hit_rate").get<double>()) << '\n';
            return out.str();
        }
        out << "workload,grid_rows,grid_cols,preload,compute,popout,total,multiplies,fifo_rw,cache_hits,cache_misses,"
               "dram_reads,dram_writes,hit_rate,energy_pj\n";
        const json& c = j.at("cycles");
        const json& e = j.at("events");
        out << j.at("workload").get<std::string>() << ',' << j.at("grid").at("rows").get<int>() << ','
            << j.at("grid").at("cols").get<int>() << ',' << c.at("preload").get<Index>() << ','
            << c.at("compute").get<Index>() << ',' << c.at("popout").get<Index>() << ',' << c.at("total").get<Index>()
            << ',' << e.at("multiplies").get<std::uint64_t>() << ',' << e.at("fifo_rw").get<std::uint64_t>() << ','
            << e.at("cache_hits").get<std::uint64_t>() << ',' << e.at("cache_misses").get<std::uint64_t>() << ','
            << e.at("dram_reads").get<std::uint64_t>() << ',' << e.at("dram_writes").get<std::uint64_t>() << ','
            << fmt(j.at("hit_rate").get<double>()) << ',' << fmt(j.at("energy_pj").get<double>()) << '\n';
    } catch (const json::exception& e) {
        throw FormatError(std::string("report is missing fields: ") + e.what());
    }
    return out.str();
}

}  // namespace diamond
