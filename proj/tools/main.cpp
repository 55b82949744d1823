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

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "osnst/diagnostics.hpp"
#include "osnst/experiment.hpp"
#include "osnst/io.hpp"
#include "osnst/solver.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int run_gen(int m, int n, int l, int s, double beta, std::uint64_t seed,
            const std::string& out) {
    std::mt19937_64 rng(seed);
    osnst::ProblemInstance p =
        osnst::bench::gen_problem(m, n, l, s, beta, rng);
    json meta;
    meta["seed"] = seed;
    meta["beta"] = beta;
    meta["s"] = s;
    meta["m"] = m;
    meta["n"] = n;
    meta["l"] = l;
    osnst::io::save_instance(p, out, meta);
    std::cout << "wrote " << out << " and " << out << ".json\n";
    return 0;
}

int run_solve(const std::string& instance, const std::string& solver,
              const std::string& schedule, int max_iter, double epsilon_rel,
              int sparsity, bool verbose) {
    osnst::ProblemInstance p = osnst::io::load_instance(instance);
    osnst::RecoveryResult r;
    if (solver == "somp") {
        int s = sparsity;
        if (s <= 0 && p.true_support) {
            s = static_cast<int>(p.true_support->size());
        }
        if (s <= 0) {
            std::cerr << "somp needs --sparsity (no ground-truth support in "
                         "the instance)\n";
            return 1;
        }
        r = osnst::somp_solve(p, s);
    } else {
        osnst::SolverConfig cfg;
        cfg.schedule = osnst::FeedbackSchedule::parse(schedule);
        cfg.max_iter = max_iter;
        cfg.epsilon = epsilon_rel * p.y.norm();
        cfg.keep_history = verbose;
        r = osnst::osnst_solve(p, cfg);
    }
    json j = osnst::io::result_to_json(r);
    if (p.truth) {
        j["relative_error"] = (*p.truth - r.estimate).norm() / p.truth->norm();
    }
    std::cout << j.dump(2) << '\n';
    return 0;
}

int run_sweep_cmd(const std::string& spec_path, const std::string& out,
                  int threads, bool has_seed, std::uint64_t seed) {
    std::ifstream f(spec_path);
    if (!f) {
        std::cerr << "cannot open spec: " << spec_path << '\n';
        return 1;
    }
    json j = json::parse(f);
    osnst::bench::ExperimentSpec spec = osnst::bench::spec_from_json(j);
    if (has_seed) spec.seed = seed;
    osnst::bench::ExperimentReport report =
        osnst::bench::run_sweep(spec, threads);
    osnst::bench::emit_report(report, out);
    std::cout << "wrote " << (fs::path(out) / "report.csv").string() << '\n';
    return 0;
}

int run_diagnose(const std::string& instance, int level, int k,
                 const std::string& schedule, std::uint64_t seed) {
    osnst::ProblemInstance p = osnst::io::load_instance(instance);
    json out;
    out["rip"] = osnst::io::rip_report_to_json(
        osnst::diag::rip_report(p.phi, level, seed));
    try {
        auto [spark, bound] = osnst::diag::spark_and_uniqueness(p.phi, p.y);
        out["spark"] = spark;
        out["uniqueness_bound"] = bound;
    } catch (const osnst::subset_guard_error&) {
        out["spark"] = "skipped (enumeration guard)";
    }
    if (p.truth) {
        out["alpha"] = osnst::diag::alpha_of(*p.truth);
        try {
            out["certificate"] = osnst::io::certificate_to_json(
                osnst::diag::certificate(
                    p.phi, *p.truth,
                    osnst::FeedbackSchedule::parse(schedule), k));
        } catch (const osnst::subset_guard_error&) {
            out["certificate"] = "skipped (enumeration guard)";
        }
    }
    std::cout << out.dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"joint-sparsity MMV recovery toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a synthetic instance");
    int m = 60, n = 200, l = 5, s = 10;
    double beta = 0.5;
    std::uint64_t seed = 0;
    std::string out = "instance.bin";
    gen->add_option("--m", m, "measurements");
    gen->add_option("--n", n, "signal dimension");
    gen->add_option("--l", l, "snapshots");
    gen->add_option("--s", s, "row sparsity");
    gen->add_option("--beta", beta, "AR(1) correlation in [0,1)");
    gen->add_option("--seed", seed, "rng seed");
    gen->add_option("--out", out, "output instance path");

    // solve
    auto* solve = app.add_subcommand("solve", "solve one instance");
    std::string instance, solver = "osnst", schedule = "6x";
    int max_iter = 300, sparsity = 0;
    double epsilon_rel = 1e-12;
    bool verbose = false;
    solve->add_option("--instance", instance, "instance file")->required();
    solve->add_option("--solver", solver, "osnst | somp");
    solve->add_option("--schedule", schedule, "f(k): x, 3x, x^2, or table");
    solve->add_option("--max-iter", max_iter, "iteration cap K");
    solve->add_option("--epsilon-rel", epsilon_rel,
                      "residual stop threshold relative to ||Y||_F");
    solve->add_option("--sparsity", sparsity, "somp sparsity (0: oracle)");
    solve->add_flag("--verbose", verbose, "keep per-iteration histories");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "run a phase-transition sweep");
    std::string spec_path, sweep_out = "sweep_out";
    int threads = 1;
    sweep->add_option("--spec", spec_path, "ExperimentSpec JSON")->required();
    sweep->add_option("--out", sweep_out, "output directory");
    sweep->add_option("--threads", threads, "worker threads");
    auto* seed_opt = sweep->add_option("--seed", seed, "override spec seed");

    // diagnose
    auto* diag = app.add_subcommand(
        "diagnose", "RIC / P-RIC / spark / convergence certificate");
    int level = 2, cert_k = 1;
    std::string diag_instance, diag_schedule = "x";
    diag->add_option("--instance", diag_instance, "instance file")->required();
    diag->add_option("--s", level, "sparsity level for the constants");
    diag->add_option("--k", cert_k, "iteration index for the certificate");
    diag->add_option("--schedule", diag_schedule, "f(k) for the certificate");
    diag->add_option("--seed", seed, "seed for sampled lower bounds");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) return run_gen(m, n, l, s, beta, seed, out);
        if (*solve) {
            return run_solve(instance, solver, schedule, max_iter, epsilon_rel,
                             sparsity, verbose);
        }
        if (*sweep) {
            return run_sweep_cmd(spec_path, sweep_out, threads,
                                 seed_opt->count() > 0, seed);
        }
        if (*diag) {
            return run_diagnose(diag_instance, level, cert_k, diag_schedule,
                                seed);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
