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

#include <json.hpp>
#include <random>

#include "diamond/pauli.hpp"
#include "diamond/report.hpp"
#include "test_util.hpp"

using namespace diamond;

TEST_CASE("default per-event energies") {
    const EnergyModel m;
    CHECK(m.dpe_active_cycle == doctest::Approx(6.268).epsilon(1e-3));
    CHECK(m.multiply == doctest::Approx(2.336).epsilon(1e-3));
    CHECK(m.fifo_rw == doctest::Approx(1.081).epsilon(1e-3));
    CHECK(m.dram_access == doctest::Approx(50.0 * m.fifo_rw));
    EventCounters c;
    c.active_dpe_cycles = 1000;
    CHECK(std::abs(energy(c, m) - 6270.0) <= 0.01 * 6270.0);
}

TEST_CASE("energy is linear in the counters") {
    std::mt19937_64 rng(21);
    const EnergyModel m;
    auto rand_counters = [&] {
        std::uniform_int_distribution<std::uint64_t> d(0, 100000);
        return EventCounters{d(rng), d(rng), d(rng), d(rng), d(rng)};
    };
    for (int k = 0; k < 20; ++k) {
        const EventCounters a = rand_counters(), b = rand_counters();
        const EventCounters sum{a.active_dpe_cycles + b.active_dpe_cycles, a.multiplies + b.multiplies,
                                a.fifo_rw + b.fifo_rw, a.cache_accesses + b.cache_accesses,
                                a.dram_accesses + b.dram_accesses};
        CHECK(energy(sum, m) == doctest::Approx(energy(a, m) + energy(b, m)).epsilon(1e-12));
    }
    EnergyModel bad;
    bad.multiply = -1.0;
    CHECK_THROWS_AS(bad.validate(), UsageError);
}

TEST_CASE("product report is deterministic and round-trips to CSV") {
    std::mt19937_64 rng(22);
    const DiagMatrix a = testing::random_matrix(rng, 32, 5);
    const DiagMatrix b = testing::random_matrix(rng, 32, 4);
    auto run = [&] {
        Accelerator acc;
        const ProductResult p = acc.multiply(a, b);
        return report_to_json(make_report("random", p, acc.flush()));
    };
    const std::string j1 = run(), j2 = run();
    CHECK(j1 == j2);
    const auto doc = nlohmann::json::parse(j1);
    CHECK(doc.at("schema") == 1);
    CHECK(doc.at("grid").at("rows") == 32);
    const auto& c = doc.at("cycles");
    CHECK(c.at("preload").get<Index>() + c.at("compute").get<Index>() + c.at("popout").get<Index>() ==
          c.at("total").get<Index>());
    CHECK(doc.at("energy_pj").get<double>() > 0.0);

    const std::string csv = report_json_to_csv(j1);
    CHECK(csv.rfind("workload,grid_rows", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
    CHECK_THROWS_AS(report_json_to_csv("{}"), FormatError);
    CHECK_THROWS_AS(report_json_to_csv("not json"), FormatError);
}

TEST_CASE("Taylor report carries per-iteration rows") {
    TaylorConfig cfg;
    cfg.terms = 4;
    cfg.t = 0.1;
    const TaylorResult r = taylor_expm(gen_benchmark("tfim", 4), cfg);
    const SimReport rep = make_report("tfim-4", r, 16);
    CHECK(rep.iterations.size() == 3);
    const std::string j = report_to_json(rep);
    const std::string csv = report_json_to_csv(j);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    const std::string direct = iterations_to_csv(r.records);
    CHECK(direct.rfind("k,nnzd,nnze,savings,cycles_total,hit_rate\n", 0) == 0);
    CHECK(std::count(direct.begin(), direct.end(), '\n') == 4);
}
