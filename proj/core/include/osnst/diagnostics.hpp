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

#ifndef OSNST_DIAGNOSTICS_HPP
#define OSNST_DIAGNOSTICS_HPP

#include <cstdint>
#include <utility>

#include "osnst/model.hpp"

namespace osnst::diag {

/// Refuse exhaustive enumeration beyond this many subsets.
inline constexpr std::uint64_t kSubsetGuard = 1'000'000;

/// Sample size for the Monte-Carlo lower-bound fallback.
inline constexpr int kSampleCount = 10'000;

/// C(n, k) saturating at kSubsetGuard + 1 to avoid overflow.
std::uint64_t subset_count(int n, int k);

/// Restricted isometry constant delta_s: the maximum of
/// || I - phi_S^T phi_S ||_2 over all size-s column subsets.
/// Throws subset_guard_error when C(N, s) exceeds the guard.
double ric_bruteforce(const Mat& phi, int s);

/// Preconditioned restricted isometry constant gamma_s: as delta_s but
/// with the Gram matrix phi_S^T (phi phi^T)^{-1} phi_S.
double pric_bruteforce(const Mat& phi, int s);

/// theta_t: the restricted isometry constant of (phi phi^T)^{-1} phi.
double theta_bruteforce(const Mat& phi, int t);

/// (phi phi^T)^{-1/2} phi, via the symmetric eigendecomposition of the
/// Gram matrix. gamma_s(phi) equals delta_s of this matrix.
Mat preconditioned(const Mat& phi);

/// Monte-Carlo lower bounds on the three constants: the max over
/// kSampleCount random size-s subsets.
double ric_sampled(const Mat& phi, int s, std::uint64_t seed);
double pric_sampled(const Mat& phi, int s, std::uint64_t seed);
double theta_sampled(const Mat& phi, int t, std::uint64_t seed);

struct RipReport {
    int s = 0;
    double delta_s = 0.0;
    double gamma_s = 0.0;
    double theta_s = 0.0;
    std::uint64_t subsets_examined = 0;
    bool exact = true;  // false when the Monte-Carlo fallback was used
};

/// delta/gamma/theta at level s; exhaustive when within the guard,
/// otherwise a sampled lower bound (exact = false).
RipReport rip_report(const Mat& phi, int s, std::uint64_t seed = 0);

/// Spark of phi (smallest number of linearly dependent columns; M+1 for
/// a full-spark matrix) and the uniqueness bound
/// (spark + rank(y) - 1) / 2 on the recoverable row-sparsity.
std::pair<int, double> spark_and_uniqueness(const Mat& phi, const Mat& y);

/// Ratio of the largest to the smallest nonzero singular value of x,
/// with nonzero meaning sigma > rank_tol * sigma_max.
double alpha_of(const Mat& x, double rank_tol = 1e-10);

struct ConvergenceCertificate {
    int level = 0;  // s + f(k) + f(k-1)
    double delta = 0.0;
    double gamma = 0.0;
    double theta = 0.0;
    double alpha = 1.0;
    double rho = 0.0;    // +inf when delta >= 1
    double kappa = 0.0;  // +inf when delta >= 1
    bool satisfied = false;
};

/// Assembles the contraction certificate for iteration k:
///   rho   = sqrt(2 alpha^2 gamma_l^2 / (1 - delta_l^2))
///   kappa = sqrt(1+delta_l)/(1-delta_l)
///           + sqrt(2 alpha^2 (1+theta_l)) / sqrt(1-delta_l^2)
/// at level l = s + f(k) + f(k-1), with s the row-sparsity of x_truth
/// and alpha = alpha_of(x_truth). satisfied means
/// 2 alpha^2 gamma_l^2 + delta_l^2 < 1.
ConvergenceCertificate certificate(const Mat& phi, const Mat& x_truth,
                                   const FeedbackSchedule& schedule, int k,
                                   double rank_tol = 1e-10);

}  // namespace osnst::diag

#endif  // OSNST_DIAGNOSTICS_HPP
