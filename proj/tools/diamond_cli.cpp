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


// diamond: command-line driver for the generators, kernels, simulator and reports.

#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "diamond/accelerator.hpp"
#include "diamond/hamsim.hpp"
#include "diamond/io.hpp"
#include "diamond/kernels.hpp"
#include "diamond/pauli.hpp"
#include "diamond/report.hpp"
#include "diamond/spmspm.hpp"

using namespace diamond;

namespace {

constexpr Index kCheckLimit = 1024;
constexpr std::size_t kReferenceNnzd = 783;

struct Common {
    int threads = 1;
    std::uint64_t seed = 1;
    std::string isa = "auto";
};

struct HardwareFlags {
    int grid_rows = 32;
    int grid_cols = 32;
    std::string feed = "a=asc,b=desc";
    int cache_sets = 2;
    int cache_ways = 2;
    int hit_cycles = 1;
    int miss_penalty = 5;
    int dram_cycles = 50;
    std::vector<Index> cuts;
    bool no_cuts = false;
    int a_group = 0;
    int b_group = 0;
    int pipelined = 1;
    std::string trace_path;
    std::string plan_path;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--grid-rows", grid_rows, "DPE grid rows")->check(CLI::PositiveNumber);
        cmd->add_option("--grid-cols", grid_cols, "DPE grid columns")->check(CLI::PositiveNumber);
        cmd->add_option("--feed", feed, "feed orders, e.g. a=asc,b=desc");
        cmd->add_option("--cache-sets", cache_sets, "cache sets");
        cmd->add_option("--cache-ways", cache_ways, "cache ways");
        cmd->add_option("--hit-cycles", hit_cycles, "cache hit latency");
        cmd->add_option("--miss-penalty", miss_penalty, "cache miss penalty");
        cmd->add_option("--dram-cycles", dram_cycles, "DRAM latency");
        cmd->add_option("--cuts", cuts, "row/col blocking cut indices")->delimiter(',');
        cmd->add_flag("--no-cuts", no_cuts, "disable row/col blocking");
        cmd->add_option("--a-group", a_group, "A diagonals per group (0: grid columns)");
        cmd->add_option("--b-group", b_group, "B diagonals per group (0: grid rows)");
        cmd->add_option("--pipelined", pipelined, "lanes for single-diagonal jobs (1: off)")->check(CLI::PositiveNumber);
        cmd->add_option("--trace", trace_path, "write per-cycle JSON lines here");
        cmd->add_option("--plan-json", plan_path, "write the blocking plan of the last product here");
    }

    AcceleratorConfig config(int threads) const {
        AcceleratorConfig ac;
        ac.plan.grid_rows = grid_rows;
        ac.plan.grid_cols = grid_cols;
        ac.plan.a_group_size = a_group;
        ac.plan.b_group_size = b_group;
        if (no_cuts || !cuts.empty()) {
            ac.plan.cuts_given = true;
            ac.plan.cuts = cuts;
        }
        ac.feed = parse_feed(feed);
        ac.cache = CacheConfig{cache_sets, cache_ways, hit_cycles, miss_penalty, dram_cycles};
        ac.cache.validate();
        ac.pipeline_lanes = pipelined;
        ac.threads = threads;
        return ac;
    }
};

/// Collects trace events as JSON lines.
struct TraceBuffer {
    std::ostringstream out;

    TraceSink sink() {
        return [this](const TraceEvent& e) {
            out << nlohmann::json{{"cycle", e.cycle}, {"row", e.row},  {"col", e.col},
                                  {"action", e.action}, {"a_j", e.a_j}, {"b_i", e.b_i}}
                       .dump()
                << '\n';
        };
    }
};

std::string canonical_model(const std::string& name) {
    if (name == "maxcut-ising") return "maxcut";
    if (name == "quantum-maxcut") return "qmaxcut";
    return name;
}

ModelParams parse_params(const std::vector<std::string>& items) {
    ModelParams params;
    for (const std::string& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("parameter '" + item + "' is not key=value");
        try {
            std::size_t used = 0;
            params[item.substr(0, eq)] = std::stod(item.substr(eq + 1), &used);
            if (used != item.size() - eq - 1) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw UsageError("parameter '" + item + "' has a non-numeric value");
        }
    }
    return params;
}

void print_summary(const DiagMatrix& m) {
    const double dense = static_cast<double>(m.dim()) * static_cast<double>(m.dim());
    std::printf("dim %lld  NNZD %zu  NNZE %zu  sparsity %.6f\n", static_cast<long long>(m.dim()), m.nnzd(), m.nonzeros(),
                1.0 - static_cast<double>(m.nonzeros()) / dense);
}

void write_report(const std::string& path, const std::string& json_text, bool csv) {
    const std::string body = csv ? report_json_to_csv(json_text) : json_text;
    if (path.empty() || path == "-")
        std::cout << body;
    else
        io::write_file_atomic(path, body);
}

void apply_isa(const std::string& name) {
    using namespace kernels;
    if (name == "auto") {
        set_isa(detect_isa());
        return;
    }
    const auto isa = parse_isa(name);
    if (!isa) throw UsageError("unknown ISA '" + name + "' (scalar, avx2, neon, auto)");
    if (!isa_supported(*isa)) throw UsageError("ISA '" + name + "' is not supported on this CPU");
    set_isa(*isa);
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const UsageError*>(&e) || dynamic_cast<const PlanError*>(&e)) return 1;
    if (dynamic_cast<const VerificationError*>(&e) || dynamic_cast<const SimulatorError*>(&e)) return 3;
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cycle-level model of a diagonal sparse-matrix multiplication accelerator"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value configuration file; flags override it");
    Common common;
    app.add_option("--threads", common.threads, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--seed", common.seed, "seed for random generators");
    app.add_option("--isa", common.isa, "kernel ISA: auto, scalar, avx2, neon");

    // gen
    auto* gen = app.add_subcommand("gen", "generate a benchmark Hamiltonian or a random diagonal matrix");
    std::string gen_model, gen_out;
    int gen_n = 0, gen_max_qubits = kDefaultMaxQubits;
    std::size_t gen_diags = 4;
    std::vector<std::string> gen_params;
    gen->add_option("model", gen_model, "heisenberg, tfim, maxcut (maxcut-ising), qmaxcut or random")->required();
    gen->add_option("n", gen_n, "qubits (models) or dimension (random)")->required()->check(CLI::PositiveNumber);
    gen->add_option("-o,--out", gen_out, "output file (.diaq, .json, .mtx)");
    gen->add_option("--param", gen_params, "model parameter key=value");
    gen->add_option("--diags", gen_diags, "diagonal count for random matrices");
    gen->add_option("--max-qubits", gen_max_qubits, "qubit cap");

    // convert
    auto* conv = app.add_subcommand("convert", "convert between DiaQ binary, DiaQ JSON and Matrix Market");
    std::string conv_in, conv_out;
    conv->add_option("input", conv_in, "input file")->required();
    conv->add_option("output", conv_out, "output file")->required();

    // matmul
    auto* mm = app.add_subcommand("matmul", "functional diagonal product");
    std::string mm_a, mm_b, mm_out;
    bool mm_check = false;
    mm->add_option("a", mm_a, "left operand")->required();
    mm->add_option("b", mm_b, "right operand")->required();
    mm->add_option("-o,--out", mm_out, "output file");
    mm->add_flag("--check", mm_check, "compare against the dense oracle (N <= 1024)");

    // simulate
    auto* sim = app.add_subcommand("simulate", "blocked, cycle-level product with cache accounting");
    std::string sim_a, sim_b, sim_report, sim_matrix;
    bool sim_csv = false;
    HardwareFlags sim_hw;
    sim->add_option("a", sim_a, "left operand")->required();
    sim->add_option("b", sim_b, "right operand")->required();
    sim->add_option("-o,--out", sim_report, "report file (stdout when absent)");
    sim->add_option("--out-matrix", sim_matrix, "write the product here");
    sim->add_flag("--csv", sim_csv, "write the report as CSV");
    sim_hw.add_to(sim);

    // expm
    auto* ex = app.add_subcommand("expm", "truncated Taylor expansion of exp(-i t H)");
    std::string ex_h, ex_model, ex_report, ex_matrix, ex_precision = "fp64";
    int ex_qubits = 0, ex_iters = -1, ex_segments = 1;
    double ex_t = 1.0, ex_eps = 1e-8;
    bool ex_functional = false, ex_csv = false;
    std::vector<std::string> ex_params;
    HardwareFlags ex_hw;
    auto* ex_h_opt = ex->add_option("hamiltonian", ex_h, "Hamiltonian file");
    auto* ex_model_opt = ex->add_option("--model", ex_model, "benchmark model instead of a file");
    ex->add_option("--qubits", ex_qubits, "qubits for --model");
    ex->add_option("--param", ex_params, "model parameter key=value");
    ex->add_option("--t", ex_t, "evolution time");
    ex->add_option("--iters", ex_iters, "products to perform (highest power = iters + 1)");
    ex->add_option("--eps", ex_eps, "remainder bound when --iters is absent");
    ex->add_option("--segments", ex_segments, "repeat the expansion at t / segments")->check(CLI::PositiveNumber);
    ex->add_option("--precision", ex_precision, "fp64 or fp32")->check(CLI::IsMember({"fp64", "fp32"}));
    ex->add_flag("--functional-only", ex_functional, "skip the cycle and cache model");
    ex->add_option("-o,--out", ex_report, "report file (stdout when absent)");
    ex->add_option("--out-matrix", ex_matrix, "write U here");
    ex->add_flag("--csv", ex_csv, "write the report as CSV");
    ex_h_opt->excludes(ex_model_opt);
    ex_hw.add_to(ex);

    // report
    auto* rep = app.add_subcommand("report", "re-render a report JSON as CSV");
    std::string rep_in, rep_out;
    rep->add_option("input", rep_in, "report JSON")->required();
    rep->add_option("-o,--out", rep_out, "CSV file (stdout when absent)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        apply_isa(common.isa);

        if (*gen) {
            const std::string model = canonical_model(gen_model);
            DiagMatrix m;
            if (model == "random") {
                if (gen_diags < 1 || static_cast<Index>(gen_diags) > 2 * Index{gen_n} - 1)
                    throw UsageError("--diags must lie in [1, 2n-1]");
                std::mt19937_64 rng(common.seed);
                std::vector<Index> all;
                for (Index d = -(gen_n - 1); d <= gen_n - 1; ++d) all.push_back(d);
                std::shuffle(all.begin(), all.end(), rng);
                all.resize(gen_diags);
                std::sort(all.begin(), all.end());
                std::uniform_real_distribution<double> val(-1.0, 1.0);
                std::vector<Diagonal> diags;
                for (Index d : all) {
                    Diagonal dg{d, std::vector<Scalar>(static_cast<std::size_t>(gen_n - (d < 0 ? -d : d)))};
                    for (Scalar& v : dg.values) v = Scalar{val(rng), val(rng)};
                    diags.push_back(std::move(dg));
                }
                m = DiagMatrix(gen_n, std::move(diags));
            } else {
                m = gen_benchmark(model, gen_n, parse_params(gen_params), gen_max_qubits);
            }
            print_summary(m);
            if (!gen_out.empty()) io::save_matrix(gen_out, m);
        } else if (*conv) {
            io::save_matrix(conv_out, io::load_matrix(conv_in));
        } else if (*mm) {
            const DiagMatrix a = io::load_matrix(mm_a), b = io::load_matrix(mm_b);
            if (mm_check && a.dim() > kCheckLimit)
                throw UsageError("--check densifies; N must be at most " + std::to_string(kCheckLimit));
            MatmulStats stats;
            const DiagMatrix c = diag_matmul(a, b, &stats, common.threads);
            print_summary(c);
            std::printf("multiplies %llu\n", static_cast<unsigned long long>(stats.multiplies));
            if (mm_check) {
                const DenseMatrix ref = dense_matmul_oracle(to_dense(a), to_dense(b));
                const double err = relative_frobenius_error(c, from_dense(ref));
                std::printf("check relative error %.3e\n", err);
                if (!(err <= 1e-12)) throw VerificationError("product diverges from the dense oracle");
                std::printf("check PASS\n");
            }
            if (!mm_out.empty()) io::save_matrix(mm_out, c);
        } else if (*sim) {
            const DiagMatrix a = io::load_matrix(sim_a), b = io::load_matrix(sim_b);
            AcceleratorConfig ac = sim_hw.config(common.threads);
            TraceBuffer trace;
            if (!sim_hw.trace_path.empty()) ac.trace = trace.sink();
            Accelerator acc(ac);
            const ProductResult p = acc.multiply(a, b);
            const SimReport r = make_report("simulate", p, acc.flush());
            if (!sim_hw.plan_path.empty()) io::write_file_atomic(sim_hw.plan_path, plan_to_json(p.plan));
            if (!sim_hw.trace_path.empty()) io::write_file_atomic(sim_hw.trace_path, trace.out.str());
            if (!sim_matrix.empty()) io::save_matrix(sim_matrix, p.c);
            write_report(sim_report, report_to_json(r), sim_csv);
        } else if (*ex) {
            DiagMatrix h;
            std::string workload;
            if (!ex_model.empty()) {
                if (ex_qubits < 1) throw UsageError("--model needs --qubits");
                workload = canonical_model(ex_model) + "-" + std::to_string(ex_qubits);
                h = gen_benchmark(canonical_model(ex_model), ex_qubits, parse_params(ex_params));
            } else if (!ex_h.empty()) {
                workload = ex_h;
                h = io::load_matrix(ex_h);
            } else {
                throw UsageError("expm needs a Hamiltonian file or --model");
            }
            if (!ex_hw.plan_path.empty()) throw UsageError("--plan-json applies to simulate only");
            TaylorConfig cfg;
            cfg.t = ex_t;
            cfg.eps = ex_eps;
            if (ex_iters >= 0) cfg.terms = ex_iters + 1;
            cfg.segments = ex_segments;
            cfg.float32 = ex_precision == "fp32";
            cfg.use_simulator = !ex_functional;
            cfg.threads = common.threads;
            cfg.accel = ex_hw.config(common.threads);
            TraceBuffer trace;
            if (!ex_hw.trace_path.empty()) cfg.accel.trace = trace.sink();
            const TaylorResult res = taylor_expm(h, cfg);
            for (const IterationRecord& rec : res.records)
                std::fprintf(stderr, "iteration %d  NNZD %zu  NNZE %zu  savings %.6f  cycles %lld  hit rate %.4f\n",
                             rec.k, rec.nnzd, rec.nnze, rec.savings, static_cast<long long>(rec.stage_cycles.total),
                             rec.mem.hit_rate());
            if (canonical_model(ex_model) == "heisenberg" && ex_qubits == 10 && res.records.size() >= 3)
                std::fprintf(stderr, "iteration 3 NNZD %zu (reference %zu)\n", res.records[2].nnzd, kReferenceNnzd);
            if (!ex_hw.trace_path.empty()) io::write_file_atomic(ex_hw.trace_path, trace.out.str());
            if (!ex_matrix.empty()) io::save_matrix(ex_matrix, res.u);
            write_report(ex_report, report_to_json(make_report(workload, res, h.dim())), ex_csv);
        } else if (*rep) {
            const std::string csv = report_json_to_csv(io::read_file(rep_in));
            if (rep_out.empty() || rep_out == "-")
                std::cout << csv;
            else
                io::write_file_atomic(rep_out, csv);
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
