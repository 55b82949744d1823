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

#include "osnst/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <thread>

#include "osnst/solver.hpp"

namespace osnst::bench {

namespace {

// fresh distribution per instance: normal_distribution caches a spare
// draw, which must not leak between differently-seeded generators
struct Gaussian {
    std::mt19937_64& rng;
    std::normal_distribution<double> dist{0.0, 1.0};
    double operator()() { return dist(rng); }
};

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

void ExperimentSpec::validate() const {
    if (trials < 1) throw dimension_error("ExperimentSpec: trials must be >= 1");
    if (s_min < 1 || s_max < s_min || s_max > m - 1) {
        throw dimension_error("ExperimentSpec: sparsity range must lie in [1, M-1]");
    }
    if (beta < 0.0 || beta > 1.0) {
        throw dimension_error("ExperimentSpec: beta must be in [0, 1]");
    }
    if (schedules.empty() || solvers.empty()) {
        throw dimension_error("ExperimentSpec: need at least one solver and schedule");
    }
    for (const auto& sv : solvers) {
        if (sv != "osnst" && sv != "somp") {
            throw dimension_error("ExperimentSpec: unknown solver '" + sv + "'");
        }
    }
}

ExperimentSpec spec_from_json(const nlohmann::json& j) {
    ExperimentSpec s;
    s.m = j.value("m", s.m);
    s.n = j.value("n", s.n);
    s.l = j.value("l", s.l);
    s.s_min = j.value("s_min", s.s_min);
    s.s_max = j.value("s_max", s.s_max);
    s.trials = j.value("trials", s.trials);
    s.beta = j.value("beta", s.beta);
    s.seed = j.value("seed", s.seed);
    s.success_tol = j.value("success_tol", s.success_tol);
    s.max_iter = j.value("max_iter", s.max_iter);
    s.epsilon_rel = j.value("epsilon_rel", s.epsilon_rel);
    s.record_timing = j.value("record_timing", s.record_timing);
    if (j.contains("schedules")) {
        s.schedules.clear();
        for (const auto& t : j.at("schedules")) {
            s.schedules.push_back(FeedbackSchedule::parse(t.get<std::string>()));
        }
    }
    if (j.contains("solvers")) {
        s.solvers = j.at("solvers").get<std::vector<std::string>>();
    }
    s.validate();
    return s;
}

nlohmann::json spec_to_json(const ExperimentSpec& s) {
    nlohmann::json j;
    j["m"] = s.m;
    j["n"] = s.n;
    j["l"] = s.l;
    j["s_min"] = s.s_min;
    j["s_max"] = s.s_max;
    j["trials"] = s.trials;
    j["beta"] = s.beta;
    j["seed"] = s.seed;
    j["success_tol"] = s.success_tol;
    j["max_iter"] = s.max_iter;
    j["epsilon_rel"] = s.epsilon_rel;
    j["record_timing"] = s.record_timing;
    std::vector<std::string> sched;
    for (const auto& f : s.schedules) sched.push_back(f.name());
    j["schedules"] = sched;
    j["solvers"] = s.solvers;
    return j;
}

ProblemInstance gen_problem(int m, int n, int l, int s, double beta,
                            std::mt19937_64& rng) {
    if (s < 1 || s > n || l < 1) {
        throw dimension_error("gen_problem: bad dimensions");
    }
    Gaussian gauss{rng};
    ProblemInstance p;
    p.phi.resize(m, n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < m; ++i) p.phi(i, j) = gauss();
    }

    IndexSet pool(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < s; ++i) {
        std::uniform_int_distribution<int> pick(i, n - 1);
        std::swap(pool[static_cast<std::size_t>(i)],
                  pool[static_cast<std::size_t>(pick(rng))]);
    }
    IndexSet support(pool.begin(), pool.begin() + s);
    std::sort(support.begin(), support.end());

    Mat x = Mat::Zero(n, l);
    for (int i : support) x(i, 0) = gauss();
    for (int j = 1; j < l; ++j) {
        for (int i : support) {
            x(i, j) = beta * x(i, j - 1) + (1.0 - beta) * gauss();
        }
    }
    if (beta == 1.0 && l > 1) {
        std::cerr << "gen_problem: beta = 1 makes all snapshots identical; "
                     "rank(Y) = 1 < L\n";
    }

    p.y = p.phi * x;
    p.truth = std::move(x);
    p.true_support = std::move(support);
    return p;
}

std::uint64_t derive_seed(std::uint64_t seed, int s, int trial, int solver_id) {
    std::uint64_t h = splitmix64(static_cast<std::uint64_t>(s));
    h = splitmix64(h ^ static_cast<std::uint64_t>(trial));
    h = splitmix64(h ^ static_cast<std::uint64_t>(solver_id));
    return seed ^ h;
}

namespace {

struct TrialOutcome {
    double rel_err = 1.0;
    double iters = 0.0;
    double time_s = 0.0;
    bool failed = false;
};

}  // namespace

ExperimentReport run_sweep(const ExperimentSpec& spec, int threads) {
    spec.validate();
    threads = std::max(1, threads);

    const int n_s = spec.s_max - spec.s_min + 1;
    const int n_solvers = static_cast<int>(spec.solvers.size());
    const int n_sched = static_cast<int>(spec.schedules.size());

    // task = (solver, s, trial); an osnst task runs every schedule on the
    // same generated instance
    struct Task {
        int solver_id;
        int s;
        int trial;
    };
    std::vector<Task> tasks;
    tasks.reserve(static_cast<std::size_t>(n_solvers) * n_s * spec.trials);
    for (int sv = 0; sv < n_solvers; ++sv) {
        for (int s = spec.s_min; s <= spec.s_max; ++s) {
            for (int t = 0; t < spec.trials; ++t) tasks.push_back({sv, s, t});
        }
    }

    std::vector<std::vector<TrialOutcome>> outcomes(
        tasks.size(), std::vector<TrialOutcome>(
                          static_cast<std::size_t>(std::max(n_sched, 1))));

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t ti = next.fetch_add(1);
            if (ti >= tasks.size()) return;
            const Task& task = tasks[ti];
            std::mt19937_64 rng(
                derive_seed(spec.seed, task.s, task.trial, task.solver_id));
            ProblemInstance p = gen_problem(spec.m, spec.n, spec.l, task.s,
                                            spec.beta, rng);
            const double truth_norm = p.truth->norm();
            if (spec.solvers[static_cast<std::size_t>(task.solver_id)] ==
                "osnst") {
                for (int sc = 0; sc < n_sched; ++sc) {
                    SolverConfig cfg;
                    cfg.schedule = spec.schedules[static_cast<std::size_t>(sc)];
                    cfg.max_iter = spec.max_iter;
                    cfg.epsilon = spec.epsilon_rel * p.y.norm();
                    RecoveryResult r = osnst_solve(p, cfg);
                    TrialOutcome& o =
                        outcomes[ti][static_cast<std::size_t>(sc)];
                    o.rel_err = (*p.truth - r.estimate).norm() / truth_norm;
                    o.iters = static_cast<double>(r.iterations);
                    o.time_s = r.wall_time;
                    o.failed = r.failed;
                }
            } else {  // somp gets the oracle sparsity
                RecoveryResult r = somp_solve(p, task.s);
                TrialOutcome& o = outcomes[ti][0];
                o.rel_err = (*p.truth - r.estimate).norm() / truth_norm;
                o.iters = static_cast<double>(r.iterations);
                o.time_s = r.wall_time;
                o.failed = r.failed;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    // fixed-order reduction, independent of worker scheduling
    ExperimentReport report;
    report.spec = spec;
    auto task_index = [&](int sv, int s, int t) {
        return (static_cast<std::size_t>(sv) * n_s +
                static_cast<std::size_t>(s - spec.s_min)) *
                   static_cast<std::size_t>(spec.trials) +
               static_cast<std::size_t>(t);
    };
    for (int sv = 0; sv < n_solvers; ++sv) {
        const bool is_osnst = spec.solvers[static_cast<std::size_t>(sv)] == "osnst";
        const int rows_per_s = is_osnst ? n_sched : 1;
        for (int sc = 0; sc < rows_per_s; ++sc) {
            for (int s = spec.s_min; s <= spec.s_max; ++s) {
                SweepRow row;
                row.solver = spec.solvers[static_cast<std::size_t>(sv)];
                row.schedule =
                    is_osnst
                        ? spec.schedules[static_cast<std::size_t>(sc)].name()
                        : "oracle-s";
                row.s = s;
                row.trials = spec.trials;
                double time_sum = 0.0, iter_sum = 0.0;
                for (int t = 0; t < spec.trials; ++t) {
                    const TrialOutcome& o =
                        outcomes[task_index(sv, s, t)]
                                [static_cast<std::size_t>(sc)];
                    if (!o.failed && o.rel_err <= spec.success_tol) {
                        ++row.successes;
                    }
                    if (o.failed) ++row.failed_trials;
                    time_sum += o.time_s;
                    iter_sum += o.iters;
                }
                row.success_freq =
                    static_cast<double>(row.successes) / spec.trials;
                row.mean_time_s =
                    spec.record_timing ? time_sum / spec.trials : 0.0;
                row.mean_iters = iter_sum / spec.trials;
                report.rows.push_back(std::move(row));
            }
        }
    }
    return report;
}

std::string report_csv(const ExperimentReport& report) {
    std::string out =
        "solver,schedule,s,success_freq,mean_time_s,mean_iters,failed_trials\n";
    for (const auto& r : report.rows) {
        const std::string sched =
            r.schedule.find(',') == std::string::npos
                ? r.schedule
                : '"' + r.schedule + '"';
        out += r.solver + ',' + sched + ',' + std::to_string(r.s) +
               ',' + fmt6(r.success_freq) + ',' + fmt6(r.mean_time_s) + ',' +
               fmt6(r.mean_iters) + ',' + std::to_string(r.failed_trials) +
               '\n';
    }
    return out;
}

namespace {

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

void write_svg_chart(const std::filesystem::path& path,
                     const std::vector<Series>& series,
                     const std::string& x_label, const std::string& y_label) {
    const int w = 640, h = 480, ml = 60, mr = 150, mt = 20, mb = 50;
    double xmin = 1e300, xmax = -1e300, ymin = 0.0, ymax = -1e300;
    for (const auto& s : series) {
        for (auto [x, y] : s.points) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymax = std::max(ymax, y);
        }
    }
    if (xmax <= xmin) xmax = xmin + 1.0;
    if (ymax <= ymin) ymax = ymin + 1.0;
    auto px = [&](double x) {
        return ml + (x - xmin) / (xmax - xmin) * (w - ml - mr);
    };
    auto py = [&](double y) {
        return h - mb - (y - ymin) / (ymax - ymin) * (h - mt - mb);
    };
    static const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                   "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
    std::ofstream f(path);
    if (!f) {
        throw std::runtime_error("cannot write " + path.string());
    }
    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << h << "\">\n";
    f << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
    f << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr
      << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n";
    f << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
      << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n";
    f << "<text x=\"" << (ml + w - mr) / 2 << "\" y=\"" << h - 12
      << "\" text-anchor=\"middle\" font-size=\"14\">" << x_label
      << "</text>\n";
    f << "<text x=\"16\" y=\"" << (mt + h - mb) / 2
      << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 16 "
      << (mt + h - mb) / 2 << ")\">" << y_label << "</text>\n";
    f << "<text x=\"" << ml << "\" y=\"" << h - mb + 18
      << "\" font-size=\"12\" text-anchor=\"middle\">" << fmt6(xmin)
      << "</text>\n";
    f << "<text x=\"" << w - mr << "\" y=\"" << h - mb + 18
      << "\" font-size=\"12\" text-anchor=\"middle\">" << fmt6(xmax)
      << "</text>\n";
    f << "<text x=\"" << ml - 6 << "\" y=\"" << h - mb + 4
      << "\" font-size=\"12\" text-anchor=\"end\">" << fmt6(ymin)
      << "</text>\n";
    f << "<text x=\"" << ml - 6 << "\" y=\"" << mt + 4
      << "\" font-size=\"12\" text-anchor=\"end\">" << fmt6(ymax)
      << "</text>\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = colors[i % 8];
        f << "<polyline fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.5\" points=\"";
        for (auto [x, y] : series[i].points) {
            f << px(x) << ',' << py(y) << ' ';
        }
        f << "\"/>\n";
        const int ly = mt + 16 + static_cast<int>(i) * 18;
        f << "<line x1=\"" << w - mr + 10 << "\" y1=\"" << ly << "\" x2=\""
          << w - mr + 34 << "\" y2=\"" << ly << "\" stroke=\"" << color
          << "\" stroke-width=\"2\"/>\n";
        f << "<text x=\"" << w - mr + 40 << "\" y=\"" << ly + 4
          << "\" font-size=\"12\">" << series[i].label << "</text>\n";
    }
    f << "</svg>\n";
}

std::vector<Series> collect_series(const ExperimentReport& report,
                                   double SweepRow::*metric) {
    std::vector<Series> out;
    for (const auto& r : report.rows) {
        const std::string label = r.solver + " f=" + r.schedule;
        auto it = std::find_if(out.begin(), out.end(), [&](const Series& s) {
            return s.label == label;
        });
        if (it == out.end()) {
            out.push_back({label, {}});
            it = out.end() - 1;
        }
        it->points.emplace_back(static_cast<double>(r.s), r.*metric);
    }
    return out;
}

}  // namespace

void emit_report(const ExperimentReport& report,
                 const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    {
        std::ofstream f(dir / "report.csv", std::ios::binary);
        if (!f) {
            throw std::runtime_error("cannot write " +
                                     (dir / "report.csv").string());
        }
        f << report_csv(report);
    }
    write_svg_chart(dir / "success_freq.svg",
                    collect_series(report, &SweepRow::success_freq), "sparsity s",
                    "frequency of exact recovery");
    write_svg_chart(dir / "mean_time_s.svg",
                    collect_series(report, &SweepRow::mean_time_s), "sparsity s",
                    "mean running time [s]");
    {
        std::ofstream f(dir / "provenance.json");
        if (!f) {
            throw std::runtime_error("cannot write " +
                                     (dir / "provenance.json").string());
        }
        f << spec_to_json(report.spec).dump(2) << '\n';
    }
}

}  // namespace osnst::bench
