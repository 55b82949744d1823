// Copyright 2026 the osnst authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "osnst/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

namespace osnst {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

Mat nst_project(const ProblemInstance& p, const linalg::RowPseudoInverse& pinv,
                const Mat& w_prev) {
    if (w_prev.rows() != p.phi.cols() || w_prev.cols() != p.y.cols()) {
        throw dimension_error("nst_project: w_prev must be N x L");
    }
    return w_prev + pinv.apply(p.y - p.phi * w_prev);
}

Selection select_support(const Mat& x_k, int count, double rank_tol) {
    if (count < 1 || count > x_k.rows()) {
        throw dimension_error("select_support: count out of range");
    }
    Mat q = linalg::orth_basis(x_k, rank_tol);

    Selection sel;
    sel.basis_rank = static_cast<int>(q.cols());
    sel.scores.resize(static_cast<std::size_t>(x_k.rows()));
    for (int i = 0; i < x_k.rows(); ++i) {
        sel.scores[static_cast<std::size_t>(i)] = q.row(i).norm();
    }

    IndexSet order(static_cast<std::size_t>(x_k.rows()));
    std::iota(order.begin(), order.end(), 0);
    // stable sort on descending score: equal scores keep index order,
    // which is the smaller-index-wins tie break.
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return sel.scores[static_cast<std::size_t>(a)] >
               sel.scores[static_cast<std::size_t>(b)];
    });
    sel.indices.assign(order.begin(), order.begin() + count);
    std::sort(sel.indices.begin(), sel.indices.end());
    return sel;
}

Mat feedback_step(const ProblemInstance& p, const IndexSet& support) {
    Mat z = linalg::restricted_lsq(p.phi, support, p.y);
    Mat w = Mat::Zero(p.phi.cols(), p.y.cols());
    for (std::size_t i = 0; i < support.size(); ++i) {
        w.row(support[i]) = z.row(static_cast<Eigen::Index>(i));
    }
    return w;
}

RecoveryResult osnst_solve(const ProblemInstance& p, const SolverConfig& cfg) {
    p.validate();
    const auto t0 = Clock::now();

    RecoveryResult out;
    out.estimate = Mat::Zero(p.phi.cols(), p.y.cols());

    const double eps = cfg.epsilon ? *cfg.epsilon : 1e-12 * p.y.norm();
    const int cap = p.m() - 1;
    const linalg::RowPseudoInverse pinv(p.phi);

    double res = residual_norm(p, out.estimate);
    int k = 1;
    while (res > eps && k < cfg.max_iter) {
        Mat x_k = nst_project(p, pinv, out.estimate);
        if (!x_k.allFinite()) {
            throw numeric_overflow_error(
                "osnst_solve: non-finite iterate at k=" + std::to_string(k));
        }
        const int count = cfg.schedule.eval(k, cap);
        if (cfg.schedule.raw(k) > cap) out.clamped = true;

        Selection sel = select_support(x_k, count, cfg.rank_tol);
        if (sel.basis_rank < p.l()) out.rank_drop = true;

        try {
            out.estimate = feedback_step(p, sel.indices);
        } catch (const rank_deficiency_error& e) {
            out.failed = true;
            out.failure = e.what();
            break;
        }
        res = residual_norm(p, out.estimate);
        if (cfg.keep_history) {
            out.support_history.push_back(std::move(sel.indices));
            out.residual_history.push_back(res);
        }
        out.iterations = k;
        ++k;
    }
    out.final_residual = res;
    out.converged = !out.failed && res <= eps;
    out.wall_time = seconds_since(t0);
    return out;
}

RecoveryResult somp_solve(const ProblemInstance& p, int sparsity) {
    p.validate();
    if (sparsity < 1 || sparsity > p.m() - 1) {
        throw dimension_error("somp_solve: sparsity out of range");
    }
    const auto t0 = Clock::now();

    RecoveryResult out;
    out.estimate = Mat::Zero(p.phi.cols(), p.y.cols());

    Mat residual = p.y;
    IndexSet support;
    std::vector<char> taken(static_cast<std::size_t>(p.n()), 0);

    for (int round = 0; round < sparsity; ++round) {
        // row norms of phi^T residual, skipping already-selected columns
        int best = -1;
        double best_score = -1.0;
        for (int j = 0; j < p.n(); ++j) {
            if (taken[static_cast<std::size_t>(j)]) continue;
            const double score = (p.phi.col(j).transpose() * residual).norm();
            if (score > best_score) {
                best_score = score;
                best = j;
            }
        }
        support.push_back(best);
        taken[static_cast<std::size_t>(best)] = 1;
        std::sort(support.begin(), support.end());

        try {
            out.estimate = feedback_step(p, support);
        } catch (const rank_deficiency_error& e) {
            out.failed = true;
            out.failure = e.what();
            break;
        }
        residual = p.y - p.phi * out.estimate;
        out.iterations = round + 1;
        out.support_history.push_back(support);
        out.residual_history.push_back(residual.norm());
    }
    out.final_residual = residual.norm();
    out.converged = !out.failed && out.final_residual <= 1e-12 * p.y.norm();
    out.wall_time = seconds_since(t0);
    return out;
}

}  // namespace osnst
