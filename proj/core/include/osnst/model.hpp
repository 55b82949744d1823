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

#ifndef OSNST_MODEL_HPP
#define OSNST_MODEL_HPP

#include <optional>
#include <string>
#include <vector>

#include "osnst/linalg.hpp"

namespace osnst {

/// A multiple-measurement-vector recovery instance: observations
/// y (M x L) taken through the sensing matrix phi (M x N), with
/// optional ground truth for benchmarking.
struct ProblemInstance {
    Mat phi;                                // M x N
    Mat y;                                  // M x L
    std::optional<Mat> truth;               // N x L
    std::optional<IndexSet> true_support;   // row support of truth
    std::optional<Mat> noise;               // M x L

    int m() const { return static_cast<int>(phi.rows()); }
    int n() const { return static_cast<int>(phi.cols()); }
    int l() const { return static_cast<int>(y.cols()); }

    /// Checks M < N, L < M, dimension agreement, and (when truth is
    /// present and noise absent) y = phi * truth to 1e-12 relative.
    /// Throws dimension_error on violation.
    void validate() const;
};

/// The non-decreasing index-count function f(k) controlling how many
/// rows the thresholding step keeps at iteration k.
class FeedbackSchedule {
public:
    static FeedbackSchedule linear(int slope);
    static FeedbackSchedule quadratic();
    static FeedbackSchedule table(std::vector<int> counts);

    /// Parses "x", "3x", "x^2", or a comma list like "2,4,8".
    static FeedbackSchedule parse(const std::string& text);

    /// Uncapped f(k), k >= 1. f(0) is defined as 0 (nothing selected
    /// before the first iteration). A table holds its last value past
    /// the end.
    int raw(int k) const;

    /// min(f(k), cap).
    int eval(int k, int cap) const;

    std::string name() const;

private:
    enum class Kind { Linear, Quadratic, Table };
    Kind kind_ = Kind::Linear;
    int slope_ = 1;
    std::vector<int> table_;
};

struct SolverConfig {
    /// Absolute residual (Frobenius) stop threshold. When unset the
    /// solver uses 1e-12 * ||Y||_F.
    std::optional<double> epsilon;
    int max_iter = 300;
    FeedbackSchedule schedule = FeedbackSchedule::linear(6);
    double rank_tol = 1e-10;
    /// Retain per-iteration supports and residuals (memory grows with
    /// the iteration count; off by default for large sweeps).
    bool keep_history = false;
};

struct RecoveryResult {
    Mat estimate;                             // N x L
    std::vector<IndexSet> support_history;    // filled when keep_history
    std::vector<double> residual_history;     // filled when keep_history
    int iterations = 0;
    bool converged = false;
    double final_residual = 0.0;
    double wall_time = 0.0;                   // seconds
    bool failed = false;
    std::string failure;
    bool clamped = false;     // f(k) hit the M-1 cap at some iteration
    bool rank_drop = false;   // orth basis had fewer than L columns
};

/// || y - phi * w ||_F.
double residual_norm(const ProblemInstance& p, const Mat& w);

}  // namespace osnst

#endif  // OSNST_MODEL_HPP
