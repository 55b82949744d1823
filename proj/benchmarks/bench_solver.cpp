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

#include <benchmark/benchmark.h>

#include <random>

#include "osnst/experiment.hpp"
#include "osnst/solver.hpp"

using namespace osnst;

namespace {

ProblemInstance make_instance(int m, int n, int l, int s) {
    std::mt19937_64 rng(1234);
    return bench::gen_problem(m, n, l, s, 0.5, rng);
}

}  // namespace

static void BM_NstProject(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    ProblemInstance p = make_instance(m, 4 * m, 5, m / 4);
    linalg::RowPseudoInverse pinv(p.phi);
    Mat w = Mat::Zero(p.n(), p.l());
    for (auto _ : state) {
        benchmark::DoNotOptimize(nst_project(p, pinv, w));
    }
}
BENCHMARK(BM_NstProject)->Arg(60)->Arg(120)->Arg(300);

static void BM_OrthBasis(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937_64 rng(7);
    std::normal_distribution<double> dist;
    Mat x(n, 5);
    for (int j = 0; j < 5; ++j) {
        for (int i = 0; i < n; ++i) x(i, j) = dist(rng);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(linalg::orth_basis(x));
    }
}
BENCHMARK(BM_OrthBasis)->Arg(200)->Arg(1000);

static void BM_RestrictedLsq(benchmark::State& state) {
    const int s = static_cast<int>(state.range(0));
    ProblemInstance p = make_instance(60, 200, 5, s);
    for (auto _ : state) {
        benchmark::DoNotOptimize(feedback_step(p, *p.true_support));
    }
}
BENCHMARK(BM_RestrictedLsq)->Arg(5)->Arg(15)->Arg(30);

static void BM_OsnstSolveDesk(benchmark::State& state) {
    const int s = static_cast<int>(state.range(0));
    ProblemInstance p = make_instance(60, 200, 5, s);
    SolverConfig cfg;
    for (auto _ : state) {
        benchmark::DoNotOptimize(osnst_solve(p, cfg));
    }
}
BENCHMARK(BM_OsnstSolveDesk)->Arg(5)->Arg(15)->Arg(25);

static void BM_SompSolveDesk(benchmark::State& state) {
    const int s = static_cast<int>(state.range(0));
    ProblemInstance p = make_instance(60, 200, 5, s);
    for (auto _ : state) {
        benchmark::DoNotOptimize(somp_solve(p, s));
    }
}
BENCHMARK(BM_SompSolveDesk)->Arg(5)->Arg(15);

BENCHMARK_MAIN();
