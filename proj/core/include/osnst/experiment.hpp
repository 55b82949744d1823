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

#ifndef OSNST_EXPERIMENT_HPP
#define OSNST_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <nlohmann/json_fwd.hpp>
#include <random>
#include <string>
#include <vector>

#include "osnst/model.hpp"

namespace osnst::bench {

struct ExperimentSpec {
    int m = 60;
    int n = 200;
    int l = 5;
    int s_min = 1;
    int s_max = 15;
    int trials = 50;
    double beta = 0.5;
    std::vector<FeedbackSchedule> schedules = {FeedbackSchedule::linear(6)};
    std::vector<std::string> solvers = {"osnst"};
    std::uint64_t seed = 0;
    double success_tol = 1e-4;
    int max_iter = 300;
    double epsilon_rel = 1e-12;
    /// When false the CSV timing column is written as 0, so that output
    /// bytes depend only on spec + seed.
    bool record_timing = true;

    void validate() const;
};

ExperimentSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const ExperimentSpec& spec);

/// Synthetic instance: i.i.d. N(0,1) sensing matrix, uniformly random
/// size-s row support, first snapshot i.i.d. N(0,1) on the support and
/// subsequent snapshots following the AR(1) recursion
/// x_j = beta * x_{j-1} + (1 - beta) * eps_j. Noiseless: y = phi * truth.
ProblemInstance gen_problem(int m, int n, int l, int s, double beta,
                            std::mt19937_64& rng);

/// splitmix64-style per-trial seed derivation.
std::uint64_t derive_seed(std::uint64_t seed, int s, int trial, int solver_id);

struct SweepRow {
    std::string solver;
    std::string schedule;
    int s = 0;
    int successes = 0;
    int trials = 0;
    double success_freq = 0.0;
    double mean_time_s = 0.0;
    double mean_iters = 0.0;
    int failed_trials = 0;  // structured failures (rank errors)
};

struct ExperimentReport {
    ExperimentSpec spec;
    std::vector<SweepRow> rows;
};

/// Runs trials for every (solver, schedule, s) combination. Trials run
/// concurrently on `threads` workers; per-trial results land in
/// preallocated slots and are reduced in a fixed order, so the report
/// does not depend on the thread count.
ExperimentReport run_sweep(const ExperimentSpec& spec, int threads = 1);

std::string report_csv(const ExperimentReport& report);

/// Writes report.csv, success_freq.svg, mean_time_s.svg, and
/// provenance.json under dir (created if missing).
void emit_report(const ExperimentReport& report,
                 const std::filesystem::path& dir);

}  // namespace osnst::bench

#endif  // OSNST_EXPERIMENT_HPP
