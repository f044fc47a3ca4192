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

#include <algorithm>
#include <json.hpp>
#include <random>

#include "diamond/blocking.hpp"
#include "diamond/spmspm.hpp"
#include "test_util.hpp"

using namespace diamond;

namespace {

std::vector<Index> random_cuts(std::mt19937_64& rng, Index n) {
    std::vector<Index> cuts;
    for (Index c = 1; c < n; ++c)
        if (std::uniform_int_distribution<int>(0, 5)(rng) == 0) cuts.push_back(c);
    return cuts;
}

}  // namespace

TEST_CASE("figure-six row/col split") {
    std::mt19937_64 rng(1);
    const DiagMatrix a = testing::random_matrix(rng, 5, std::vector<Index>{-1, 0, 1});
    const DiagMatrix b = testing::random_matrix(rng, 5, std::vector<Index>{-1, 0, 1});
    const auto [ag, bg] = partition_rowcol(a, b, {3});
    REQUIRE(ag.size() == 2);
    REQUIRE(bg.size() == 2);
    auto longest = [](const BlockGroup& g) {
        Index l = 0;
        for (const DiagSegment& s : g.segments) l = std::max(l, s.length());
        return l;
    };
    CHECK(longest(ag[0]) == 3);
    CHECK(longest(ag[1]) == 2);
    CHECK(longest(bg[0]) == 3);
    CHECK(longest(bg[1]) == 2);
    // A windows are column windows: every A segment element sits in its window.
    for (const DiagSegment& s : ag[1].segments) {
        CHECK(s.row_start + s.offset >= 3);
        CHECK(s.row_end() - 1 + s.offset <= 4);
    }
    for (const DiagSegment& s : bg[0].segments) CHECK(s.row_end() <= 3);
}

TEST_CASE("no cuts keeps whole diagonals") {
    std::mt19937_64 rng(2);
    const DiagMatrix a = testing::random_matrix(rng, 12, 5);
    const auto [ag, bg] = partition_rowcol(a, a, {});
    REQUIRE(ag.size() == 1);
    REQUIRE(ag[0].segments.size() == a.nnzd());
    for (std::size_t k = 0; k < a.nnzd(); ++k) {
        CHECK(ag[0].segments[k].offset == a.diagonals()[k].offset);
        CHECK(ag[0].segments[k].values == a.diagonals()[k].values);
        CHECK(ag[0].segments[k].row_start == first_row(a.diagonals()[k].offset));
    }
}

TEST_CASE("cut validation") {
    const DiagMatrix a = DiagMatrix::identity(8);
    CHECK_THROWS_AS(partition_rowcol(a, a, {0}), PlanError);
    CHECK_THROWS_AS(partition_rowcol(a, a, {8}), PlanError);
    CHECK_THROWS_AS(partition_rowcol(a, a, {4, 2}), PlanError);
    CHECK_THROWS_AS(partition_rowcol(a, a, {3, 3}), PlanError);
    CHECK_NOTHROW(partition_rowcol(a, a, {1, 7}));
    CHECK(default_cuts(4096).empty());
    CHECK(default_cuts(10000) == std::vector<Index>{4096, 8192});
}

TEST_CASE("diagonal chunking and job order") {
    std::mt19937_64 rng(3);
    const DiagMatrix a = testing::random_matrix(rng, 16, 6);
    const auto groups = partition_diagonals(a, Side::A, 4);
    REQUIRE(groups.size() == 2);
    CHECK(groups[0].segments.size() == 4);
    CHECK(groups[1].segments.size() == 2);
    CHECK_THROWS_AS(partition_diagonals(a, Side::A, 0), PlanError);

    PlanConfig cfg;
    cfg.grid_rows = 4;
    cfg.grid_cols = 4;
    const BlockPlan plan = make_plan(a, a, cfg);
    REQUIRE(plan.jobs.size() == 4);
    const std::vector<std::pair<int, int>> expect{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(plan.jobs[k].a_group == expect[k].first);
        CHECK(plan.jobs[k].b_group == expect[k].second);
    }

    const BlockPlan single = make_plan(a, a, PlanConfig{});
    CHECK(single.jobs.size() == 1);

    PlanConfig too_big = cfg;
    too_big.a_group_size = 5;
    CHECK_THROWS_AS(make_plan(a, a, too_big), PlanError);
}

TEST_CASE("random blocked plans reproduce the unblocked product") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 60; ++trial) {
        const Index n = std::uniform_int_distribution<Index>(2, 64)(rng);
        const DiagMatrix a = testing::random_matrix(rng, n, std::uniform_int_distribution<std::size_t>(1, 12)(rng));
        const DiagMatrix b = testing::random_matrix(rng, n, std::uniform_int_distribution<std::size_t>(1, 12)(rng));
        PlanConfig cfg;
        cfg.grid_rows = std::uniform_int_distribution<int>(1, 6)(rng);
        cfg.grid_cols = std::uniform_int_distribution<int>(1, 6)(rng);
        cfg.a_group_size = std::uniform_int_distribution<int>(1, cfg.grid_cols)(rng);
        cfg.b_group_size = std::uniform_int_distribution<int>(1, cfg.grid_rows)(rng);
        cfg.cuts = random_cuts(rng, n);
        cfg.cuts_given = true;
        const BlockPlan plan = make_plan(a, b, cfg);
        const DiagMatrix ref = diag_matmul(a, b);

        for (const BlockJob& job : plan.jobs) {
            const BlockGroup& ag = plan.a_groups[static_cast<std::size_t>(job.a_group)];
            const BlockGroup& bg = plan.b_groups[static_cast<std::size_t>(job.b_group)];
            CHECK(ag.window == bg.window);
            CHECK(ag.segments.size() <= static_cast<std::size_t>(cfg.grid_cols));
            CHECK(bg.segments.size() <= static_cast<std::size_t>(cfg.grid_rows));
        }
        CHECK(relative_frobenius_error(execute_plan(plan), ref) <= 1e-12);

        std::vector<std::size_t> order(plan.jobs.size());
        for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
        std::shuffle(order.begin(), order.end(), rng);
        CHECK(relative_frobenius_error(execute_plan(plan, order), ref) <= 1e-12);
    }
}

TEST_CASE("plan JSON lists jobs and groups") {
    const DiagMatrix a = DiagMatrix::identity(6);
    PlanConfig cfg;
    cfg.cuts = {3};
    cfg.cuts_given = true;
    const auto j = nlohmann::json::parse(plan_to_json(make_plan(a, a, cfg)));
    CHECK(j.at("jobs").size() == 2);
    CHECK(j.at("a_groups").size() == 2);
    CHECK(j.at("cuts") == nlohmann::json::array({3}));
}
