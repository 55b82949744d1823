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

#include <doctest.h>

#include <algorithm>
#include <random>

#include "osnst/experiment.hpp"
#include "osnst/solver.hpp"

using namespace osnst;

namespace {

Mat randn(int rows, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> dist;
    Mat m(rows, cols);
    for (int j = 0; j < cols; ++j) {
        for (int i = 0; i < rows; ++i) m(i, j) = dist(rng);
    }
    return m;
}

// second, independently written greedy reference for SOMP
Mat somp_reference(const Mat& phi, const Mat& y, int s) {
    Mat residual = y;
    IndexSet picked;
    while (static_cast<int>(picked.size()) < s) {
        double best = -1.0;
        int arg = -1;
        for (int j = 0; j < phi.cols(); ++j) {
            if (std::find(picked.begin(), picked.end(), j) != picked.end()) {
                continue;
            }
            double score = (residual.transpose() * phi.col(j)).norm();
            if (score > best) {
                best = score;
                arg = j;
            }
        }
        picked.push_back(arg);
        std::sort(picked.begin(), picked.end());
        Mat sub(phi.rows(), static_cast<Eigen::Index>(picked.size()));
        for (std::size_t i = 0; i < picked.size(); ++i) {
            sub.col(static_cast<Eigen::Index>(i)) = phi.col(picked[i]);
        }
        Mat z = sub.colPivHouseholderQr().solve(y);
        residual = y - sub * z;
    }
    Mat sub(phi.rows(), s);
    for (int i = 0; i < s; ++i) sub.col(i) = phi.col(picked[static_cast<std::size_t>(i)]);
    Mat z = sub.colPivHouseholderQr().solve(y);
    Mat w = Mat::Zero(phi.cols(), y.cols());
    for (int i = 0; i < s; ++i) w.row(picked[static_cast<std::size_t>(i)]) = z.row(i);
    return w;
}

}  // namespace

TEST_CASE("nst_project initialization gives the min-norm feasible point") {
    std::mt19937_64 rng(1);
    ProblemInstance p = bench::gen_problem(5, 12, 2, 3, 0.5, rng);
    linalg::RowPseudoInverse pinv(p.phi);
    Mat x1 = nst_project(p, pinv, Mat::Zero(12, 2));
    CHECK((x1 - pinv.apply(p.y)).norm() == 0.0);
    CHECK((p.phi * x1 - p.y).norm() < 1e-10 * p.y.norm());
}

TEST_CASE("nst_project fixes feasible points") {
    std::mt19937_64 rng(2);
    ProblemInstance p = bench::gen_problem(5, 12, 2, 3, 0.5, rng);
    linalg::RowPseudoInverse pinv(p.phi);
    CHECK((nst_project(p, pinv, *p.truth) - *p.truth).norm() <
          1e-10 * p.truth->norm());
}

TEST_CASE("nst_project is the Euclidean projection (KKT oracle)") {
    std::mt19937_64 rng(3);
    ProblemInstance p = bench::gen_problem(5, 12, 2, 3, 0.5, rng);
    linalg::RowPseudoInverse pinv(p.phi);
    Mat w = randn(12, 2, rng);
    Mat x = nst_project(p, pinv, w);
    CHECK((p.phi * x - p.y).norm() < 1e-10 * p.y.norm());

    // KKT for min ||X - W||_F^2 s.t. phi X = y: X = W + phi^T lambda with
    // (phi phi^T) lambda = y - phi W, solved by an independent dense route
    Mat lambda =
        (p.phi * p.phi.transpose()).fullPivLu().solve(p.y - p.phi * w);
    Mat oracle = w + p.phi.transpose() * lambda;
    CHECK((x - oracle).norm() < 1e-9 * (1.0 + oracle.norm()));
}

TEST_CASE("select_support finds exactly the nonzero rows") {
    std::mt19937_64 rng(4);
    Mat x = Mat::Zero(10, 3);
    IndexSet rows = {1, 4, 7};
    for (int i : rows) x.row(i) = randn(1, 3, rng);
    Selection sel = select_support(x, 3);
    CHECK(sel.indices == rows);
}

TEST_CASE("select_support tie-break picks the smaller index") {
    Mat x(4, 1);
    x << 0.9, 0.3, 0.3, 0.1;
    Selection sel = select_support(x, 2);
    CHECK(sel.indices == IndexSet{0, 1});
}

TEST_CASE("select_support is invariant to invertible right factors") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        Mat x = randn(15, 3, rng);
        Selection base = select_support(x, 5);
        Mat g = randn(3, 3, rng);
        while (std::abs(g.determinant()) < 1e-3) g = randn(3, 3, rng);
        Selection mixed = select_support(x * g, 5);
        CHECK(mixed.indices == base.indices);
    }
}

TEST_CASE("select_support rejects the zero matrix") {
    CHECK_THROWS_AS(select_support(Mat::Zero(5, 2), 2),
                    degenerate_input_error);
}

TEST_CASE("feedback on the true support recovers the signal") {
    std::mt19937_64 rng(6);
    ProblemInstance p = bench::gen_problem(10, 25, 3, 4, 0.5, rng);
    Mat w = feedback_step(p, *p.true_support);
    CHECK((w - *p.truth).norm() < 1e-8 * p.truth->norm());
}

TEST_CASE("feedback residual is orthogonal to the selected columns") {
    std::mt19937_64 rng(7);
    ProblemInstance p = bench::gen_problem(10, 25, 3, 4, 0.5, rng);
    IndexSet t = {2, 8, 13, 20, 21};
    Mat w = feedback_step(p, t);
    Mat sub = linalg::columns(p.phi, t);
    CHECK((sub.transpose() * (p.phi * w - p.y)).norm() <
          1e-10 * p.y.norm());
    for (int i = 0; i < p.n(); ++i) {
        if (std::find(t.begin(), t.end(), i) == t.end()) {
            CHECK(w.row(i).norm() == 0.0);
        }
    }
}

TEST_CASE("feedback equals the Gram-inverse update on feasible iterates") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        ProblemInstance p = bench::gen_problem(8, 18, 2, 3, 0.5, rng);
        linalg::RowPseudoInverse pinv(p.phi);
        Mat x_k = nst_project(p, pinv, randn(18, 2, rng));

        IndexSet t = {0, 5, 9, 12};
        Mat w = feedback_step(p, t);

        // the displayed update: W_T = X_T + (phi_T^T phi_T)^{-1} phi_T^T
        // phi_Tc X_Tc, evaluated literally
        IndexSet tc;
        for (int i = 0; i < p.n(); ++i) {
            if (std::find(t.begin(), t.end(), i) == t.end()) tc.push_back(i);
        }
        Mat phi_t = linalg::columns(p.phi, t);
        Mat phi_tc = linalg::columns(p.phi, tc);
        Mat x_t(t.size(), 2), x_tc(tc.size(), 2);
        for (std::size_t i = 0; i < t.size(); ++i) {
            x_t.row(static_cast<Eigen::Index>(i)) = x_k.row(t[i]);
        }
        for (std::size_t i = 0; i < tc.size(); ++i) {
            x_tc.row(static_cast<Eigen::Index>(i)) = x_k.row(tc[i]);
        }
        Mat update = x_t + (phi_t.transpose() * phi_t)
                               .fullPivLu()
                               .solve(phi_t.transpose() * phi_tc * x_tc);
        Mat w_t(t.size(), 2);
        for (std::size_t i = 0; i < t.size(); ++i) {
            w_t.row(static_cast<Eigen::Index>(i)) = w.row(t[i]);
        }
        CHECK((w_t - update).norm() < 1e-8 * (1.0 + update.norm()));
    }
}

TEST_CASE("osnst solves a small noiseless instance exactly") {
    std::mt19937_64 rng(9);
    ProblemInstance p = bench::gen_problem(20, 50, 3, 4, 0.5, rng);
    SolverConfig cfg;
    cfg.schedule = FeedbackSchedule::linear(6);
    cfg.max_iter = 50;
    cfg.keep_history = true;
    RecoveryResult r = osnst_solve(p, cfg);
    CHECK(r.converged);
    CHECK((r.estimate - *p.truth).norm() <= 1e-4 * p.truth->norm());
    REQUIRE(!r.support_history.empty());
    CHECK(static_cast<int>(r.residual_history.size()) == r.iterations);
    // final support contains the true one
    const IndexSet& last = r.support_history.back();
    for (int i : *p.true_support) {
        CHECK(std::find(last.begin(), last.end(), i) != last.end());
    }
}

TEST_CASE("osnst on the zero instance stops immediately") {
    ProblemInstance p;
    std::mt19937_64 rng(10);
    p.phi = randn(5, 12, rng);
    p.y = Mat::Zero(5, 2);
    RecoveryResult r = osnst_solve(p, SolverConfig{});
    CHECK(r.iterations == 0);
    CHECK(r.converged);
    CHECK(r.estimate.norm() == 0.0);
}

TEST_CASE("osnst s=1 L=1 matches exhaustive single-column search") {
    std::mt19937_64 rng(11);
    int agree = 0;
    for (int trial = 0; trial < 100; ++trial) {
        ProblemInstance p = bench::gen_problem(12, 24, 1, 1, 0.0, rng);
        SolverConfig cfg;
        cfg.schedule = FeedbackSchedule::linear(6);
        cfg.max_iter = 50;
        RecoveryResult r = osnst_solve(p, cfg);

        // oracle: best single-column least squares fit over all N columns
        int best = -1;
        double best_res = 1e300;
        for (int j = 0; j < p.n(); ++j) {
            Vec col = p.phi.col(j);
            Vec z = (col.transpose() * p.y) / col.squaredNorm();
            const double res = (p.y - col * z).norm();
            if (res < best_res) {
                best_res = res;
                best = j;
            }
        }
        REQUIRE(best == (*p.true_support)[0]);
        // the schedule caps at M-1 = 11 columns, so any converged support
        // must contain the true column and the estimate equals the oracle
        if (r.converged &&
            (r.estimate - *p.truth).norm() <= 1e-8 * p.truth->norm()) {
            ++agree;
        }
    }
    CHECK(agree == 100);
}

TEST_CASE("feasibility and orthogonality invariants along the iteration") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        ProblemInstance p = bench::gen_problem(15, 40, 3, 6, 0.5, rng);
        linalg::RowPseudoInverse pinv(p.phi);
        Mat w = Mat::Zero(40, 3);
        auto f = FeedbackSchedule::linear(3);
        for (int k = 1; k <= 5; ++k) {
            Mat x = nst_project(p, pinv, w);
            CHECK((p.phi * x - p.y).norm() <= 1e-10 * p.y.norm());
            Selection sel = select_support(x, f.eval(k, 14));
            Mat q = linalg::orth_basis(x);
            CHECK((q.transpose() * q -
                   Mat::Identity(q.cols(), q.cols()))
                      .cwiseAbs()
                      .maxCoeff() <= 1e-12);
            w = feedback_step(p, sel.indices);
            Mat sub = linalg::columns(p.phi, sel.indices);
            CHECK((sub.transpose() * (p.phi * w - p.y)).norm() <=
                  1e-10 * p.y.norm());
        }
    }
}

TEST_CASE("somp selects the generating column at s=1") {
    // correlation scores assume comparable column norms, so normalize
    std::mt19937_64 rng(13);
    ProblemInstance p = bench::gen_problem(6, 15, 2, 1, 0.5, rng);
    for (int j = 0; j < p.n(); ++j) p.phi.col(j) /= p.phi.col(j).norm();
    p.y = p.phi * *p.truth;
    RecoveryResult r = somp_solve(p, 1);
    CHECK(r.support_history.back() == *p.true_support);
}

TEST_CASE("somp with orthonormal columns keeps the top correlations") {
    std::mt19937_64 rng(14);
    Mat a = randn(8, 8, rng);
    Mat q = a.householderQr().householderQ();
    ProblemInstance p;
    p.phi = q.leftCols(6);  // 8x6... needs M < N; pad instead
    p.phi = Mat(8, 10);
    p.phi.leftCols(8) = q;
    p.phi.rightCols(2) = randn(8, 2, rng) * 1e-3;  // tiny extra columns
    p.y = randn(8, 2, rng);
    RecoveryResult r = somp_solve(p, 3);

    Mat corr = q.transpose() * p.y;  // correlations of the orthonormal part
    std::vector<std::pair<double, int>> scored;
    for (int j = 0; j < 8; ++j) scored.push_back({corr.row(j).norm(), j});
    std::sort(scored.rbegin(), scored.rend());
    IndexSet expect = {scored[0].second, scored[1].second, scored[2].second};
    std::sort(expect.begin(), expect.end());
    CHECK(r.support_history.back() == expect);
}

TEST_CASE("somp matches an independent greedy reference") {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 20; ++trial) {
        ProblemInstance p = bench::gen_problem(8, 20, 2, 3, 0.5, rng);
        RecoveryResult r = somp_solve(p, 3);
        Mat ref = somp_reference(p.phi, p.y, 3);
        CHECK((r.estimate - ref).norm() < 1e-8 * (1.0 + ref.norm()));
    }
}
