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

#include "diamond/hamsim.hpp"

#include <cmath>

#include "diamond/spmspm.hpp"

namespace diamond {

void TaylorConfig::validate() const {
    if (!std::isfinite(t)) throw UsageError("evolution time must be finite");
    if (terms && (*terms < 0 || *terms > max_terms))
        throw UsageError("term count must lie in [0, " + std::to_string(max_terms) + "]");
    if (!terms && !(eps > 0.0)) throw UsageError("eps must be positive");
    if (segments < 1) throw UsageError("segments must be positive");
    if (drop_relative < 0.0) throw UsageError("drop threshold must be non-negative");
    if (threads < 1) throw UsageError("thread count must be positive");
}

int taylor_terms(double norm, double eps, int cap) {
    double term = 1.0;
    for (int k = 0; k <= cap; ++k) {
        term *= norm / static_cast<double>(k + 1);
        if (term <= eps) return k;
    }
    throw ConvergenceError("Taylor remainder bound stays above " + std::to_string(eps) + " for " +
                           std::to_string(cap) + " terms (one-norm " + std::to_string(norm) + ")");
}

double storage_savings(std::size_t storage_scalars, Index n) {
    const double dense = static_cast<double>(n) * static_cast<double>(n);
    return 1.0 - static_cast<double>(storage_scalars) / dense;
}

std::vector<double> storage_report(const std::vector<IterationRecord>& records, Index n) {
    std::vector<double> out;
    out.reserve(records.size());
    for (const IterationRecord& r : records) out.push_back(storage_savings(r.storage_scalars, n));
    return out;
}

TaylorResult taylor_expm(const DiagMatrix& h, const TaylorConfig& cfg) {
    cfg.validate();
    const Index n = h.dim();
    const double step = cfg.t / static_cast<double>(cfg.segments);

    DiagMatrix m = drop_zero_diagonals(scaled(cfg.float32 ? round_to_float32(h) : h, Scalar{0.0, -step}), 0.0);
    if (cfg.float32) m = round_to_float32(m);

    TaylorResult res;
    res.one_norm_m = one_norm(m);
    res.terms = cfg.terms ? *cfg.terms : taylor_terms(res.one_norm_m, cfg.eps, cfg.max_terms);

    AcceleratorConfig accel = cfg.accel;
    accel.drop_relative = cfg.drop_relative;
    accel.threads = cfg.threads;
    Accelerator machine(accel);
    res.grid_rows = accel.plan.grid_rows;
    res.grid_cols = accel.plan.grid_cols;

    DiagMatrix u = DiagMatrix::identity(n);
    if (res.terms >= 1) u = add_scaled(u, m);
    DiagMatrix term = m;
    std::int64_t term_tag = 0;   // T_1 is M itself

    for (int k = 1; k < res.terms; ++k) {
        IterationRecord rec;
        rec.k = k;
        DiagMatrix c(n);
        if (cfg.use_simulator) {
            ProductResult pr = machine.multiply(term, m, MatrixTags{term_tag, 0, k + 1});
            c = std::move(pr.c);
            rec.stage_cycles = pr.cycles;
            rec.events = pr.events;
            rec.mem = pr.mem;
            rec.max_active_dpes = pr.max_active_dpes;
            rec.jobs = pr.jobs.size();
        } else {
            MatmulStats stats;
            c = diag_matmul(term, m, &stats, cfg.threads);
            if (cfg.drop_relative > 0.0) c = drop_zero_diagonals(c, cfg.drop_relative * c.max_abs());
            rec.events.multiplies = stats.multiplies;
        }
        term = scaled(c, Scalar{1.0 / static_cast<double>(k + 1), 0.0});
        if (cfg.float32) term = round_to_float32(term);
        term_tag = k + 1;
        u = add_scaled(u, term);

        rec.nnzd = term.nnzd();
        rec.nnze = term.stored_scalars();
        rec.nonzeros = term.nonzeros();
        rec.storage_scalars = term.stored_scalars();
        rec.savings = storage_savings(rec.storage_scalars, n);
        res.cycles += rec.stage_cycles;
        res.events += rec.events;
        res.mem += rec.mem;
        res.records.push_back(rec);
    }
    if (cfg.use_simulator) res.mem += machine.flush();

    if (cfg.segments > 1) {
        const DiagMatrix piece = u;
        for (int s = 1; s < cfg.segments; ++s) {
            u = diag_matmul(u, piece, nullptr, cfg.threads);
            if (cfg.drop_relative > 0.0) u = drop_zero_diagonals(u, cfg.drop_relative * u.max_abs());
        }
    }
    res.u = std::move(u);
    return res;
}

DenseMatrix dense_taylor_oracle(const DenseMatrix& h, double t, int terms) {
    if (!h.square()) throw ShapeError("Taylor oracle needs a square matrix");
    const Index n = h.rows();
    DenseMatrix m(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) m(i, j) = Scalar{0.0, -t} * h(i, j);
    DenseMatrix u = DenseMatrix::identity(n);
    DenseMatrix term = DenseMatrix::identity(n);
    for (int k = 1; k <= terms; ++k) {
        term = dense_matmul_oracle(term, m);
        for (Scalar& v : term.data()) v /= static_cast<double>(k);
        for (std::size_t e = 0; e < u.data().size(); ++e) u.data()[e] += term.data()[e];
    }
    return u;
}

}  // namespace diamond
