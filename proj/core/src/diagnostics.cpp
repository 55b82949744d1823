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

#include "osnst/diagnostics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace osnst::diag {

namespace {

// tighter than the public default so brute-force constants agree with
// eigensolver oracles to 1e-10
constexpr double kNormTol = 1e-13;
constexpr int kNormMaxIter = 100000;

// Lexicographic walk over all size-k subsets of {0..n-1}.
template <typename Fn>
void for_each_subset(int n, int k, Fn&& fn) {
    IndexSet idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) {
            idx[static_cast<std::size_t>(j)] =
                idx[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
}

void check_guard(const Mat& phi, int s) {
    if (s < 1 || s > phi.cols()) {
        throw dimension_error("diagnostics: sparsity level out of range");
    }
    if (subset_count(static_cast<int>(phi.cols()), s) > kSubsetGuard) {
        throw subset_guard_error(
            "diagnostics: subset count exceeds the enumeration guard");
    }
}

double gram_deviation(const Mat& gram) {
    const Mat dev =
        Mat::Identity(gram.rows(), gram.cols()) - gram;
    return linalg::spectral_norm(dev, kNormTol, kNormMaxIter);
}

double max_gram_deviation_exhaustive(const Mat& a, const Mat* weight, int s) {
    double best = 0.0;
    for_each_subset(static_cast<int>(a.cols()), s, [&](const IndexSet& set) {
        const Mat sub = linalg::columns(a, set);
        const Mat gram =
            weight ? Mat(sub.transpose() * (*weight) * sub)
                   : Mat(sub.transpose() * sub);
        best = std::max(best, gram_deviation(gram));
    });
    return best;
}

double max_gram_deviation_sampled(const Mat& a, const Mat* weight, int s,
                                  std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const int n = static_cast<int>(a.cols());
    IndexSet pool(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
    double best = 0.0;
    for (int t = 0; t < kSampleCount; ++t) {
        for (int i = 0; i < s; ++i) {
            std::uniform_int_distribution<int> pick(i, n - 1);
            std::swap(pool[static_cast<std::size_t>(i)],
                      pool[static_cast<std::size_t>(pick(rng))]);
        }
        IndexSet set(pool.begin(), pool.begin() + s);
        const Mat sub = linalg::columns(a, set);
        const Mat gram =
            weight ? Mat(sub.transpose() * (*weight) * sub)
                   : Mat(sub.transpose() * sub);
        best = std::max(best, gram_deviation(gram));
    }
    return best;
}

Mat gram_inverse(const Mat& phi) {
    Eigen::LLT<Mat> llt(phi * phi.transpose());
    if (llt.info() != Eigen::Success) {
        throw rank_deficiency_error(
            "diagnostics: phi phi^T is not positive definite", {});
    }
    return llt.solve(Mat::Identity(phi.rows(), phi.rows()));
}

int numerical_rank(const Mat& a, double tol = 1e-10) {
    Eigen::JacobiSVD<Mat> svd(a);
    const Vec& sigma = svd.singularValues();
    if (sigma.size() == 0 || sigma(0) <= 0.0) return 0;
    int r = 0;
    while (r < sigma.size() && sigma(r) > tol * sigma(0)) ++r;
    return r;
}

}  // namespace

std::uint64_t subset_count(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t c = 1;
    for (int i = 1; i <= k; ++i) {
        c = c * static_cast<std::uint64_t>(n - k + i) /
            static_cast<std::uint64_t>(i);
        if (c > kSubsetGuard) return kSubsetGuard + 1;
    }
    return c;
}

double ric_bruteforce(const Mat& phi, int s) {
    check_guard(phi, s);
    return max_gram_deviation_exhaustive(phi, nullptr, s);
}

double pric_bruteforce(const Mat& phi, int s) {
    check_guard(phi, s);
    const Mat ginv = gram_inverse(phi);
    return max_gram_deviation_exhaustive(phi, &ginv, s);
}

double theta_bruteforce(const Mat& phi, int t) {
    check_guard(phi, t);
    const Mat pre = gram_inverse(phi) * phi;
    return max_gram_deviation_exhaustive(pre, nullptr, t);
}

Mat preconditioned(const Mat& phi) {
    Eigen::SelfAdjointEigenSolver<Mat> es(phi * phi.transpose());
    if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0) {
        throw rank_deficiency_error(
            "preconditioned: phi phi^T is not positive definite", {});
    }
    return es.operatorInverseSqrt() * phi;
}

double ric_sampled(const Mat& phi, int s, std::uint64_t seed) {
    return max_gram_deviation_sampled(phi, nullptr, s, seed);
}

double pric_sampled(const Mat& phi, int s, std::uint64_t seed) {
    const Mat ginv = gram_inverse(phi);
    return max_gram_deviation_sampled(phi, &ginv, s, seed);
}

double theta_sampled(const Mat& phi, int t, std::uint64_t seed) {
    const Mat pre = gram_inverse(phi) * phi;
    return max_gram_deviation_sampled(pre, nullptr, t, seed);
}

RipReport rip_report(const Mat& phi, int s, std::uint64_t seed) {
    RipReport r;
    r.s = s;
    const std::uint64_t count = subset_count(static_cast<int>(phi.cols()), s);
    if (count <= kSubsetGuard) {
        r.delta_s = ric_bruteforce(phi, s);
        r.gamma_s = pric_bruteforce(phi, s);
        r.theta_s = theta_bruteforce(phi, s);
        r.subsets_examined = count;
        r.exact = true;
    } else {
        r.delta_s = ric_sampled(phi, s, seed);
        r.gamma_s = pric_sampled(phi, s, seed + 1);
        r.theta_s = theta_sampled(phi, s, seed + 2);
        r.subsets_examined = static_cast<std::uint64_t>(kSampleCount);
        r.exact = false;
    }
    return r;
}

std::pair<int, double> spark_and_uniqueness(const Mat& phi, const Mat& y) {
    const int m = static_cast<int>(phi.rows());
    const int n = static_cast<int>(phi.cols());
    std::uint64_t total = 0;
    for (int k = 1; k <= std::min(m, n); ++k) {
        total += subset_count(n, k);
        if (total > kSubsetGuard) {
            throw subset_guard_error(
                "spark_and_uniqueness: subset count exceeds the guard");
        }
    }
    int spark = m + 1;  // full-spark convention
    for (int k = 1; k <= std::min(m, n) && spark == m + 1; ++k) {
        for_each_subset(n, k, [&](const IndexSet& set) {
            if (spark != m + 1) return;
            const Mat sub = linalg::columns(phi, set);
            if (numerical_rank(sub) < k) spark = k;
        });
    }
    const int rank_y = numerical_rank(y);
    const double bound = (static_cast<double>(spark) + rank_y - 1.0) / 2.0;
    return {spark, bound};
}

double alpha_of(const Mat& x, double rank_tol) {
    Eigen::JacobiSVD<Mat> svd(x);
    const Vec& sigma = svd.singularValues();
    if (sigma.size() == 0 || sigma(0) <= 0.0) {
        throw degenerate_input_error("alpha_of: all-zero input");
    }
    int r = 0;
    while (r < sigma.size() && sigma(r) > rank_tol * sigma(0)) ++r;
    return sigma(0) / sigma(r - 1);
}

ConvergenceCertificate certificate(const Mat& phi, const Mat& x_truth,
                                   const FeedbackSchedule& schedule, int k,
                                   double rank_tol) {
    if (k < 1) throw dimension_error("certificate: k must be >= 1");
    int s = 0;
    for (int i = 0; i < x_truth.rows(); ++i) {
        if (x_truth.row(i).norm() > 0.0) ++s;
    }
    if (s == 0) throw degenerate_input_error("certificate: zero truth matrix");

    const int cap = static_cast<int>(phi.rows()) - 1;
    ConvergenceCertificate c;
    c.level = s + schedule.eval(k, cap) +
              (k >= 2 ? schedule.eval(k - 1, cap) : 0);
    c.delta = ric_bruteforce(phi, c.level);
    c.gamma = pric_bruteforce(phi, c.level);
    c.theta = theta_bruteforce(phi, c.level);
    c.alpha = alpha_of(x_truth, rank_tol);

    if (c.delta >= 1.0) {
        c.rho = std::numeric_limits<double>::infinity();
        c.kappa = std::numeric_limits<double>::infinity();
        c.satisfied = false;
        return c;
    }
    const double a2 = c.alpha * c.alpha;
    const double den = 1.0 - c.delta * c.delta;
    c.rho = std::sqrt(2.0 * a2 * c.gamma * c.gamma / den);
    c.kappa = std::sqrt(1.0 + c.delta) / (1.0 - c.delta) +
              std::sqrt(2.0 * a2 * (1.0 + c.theta)) / std::sqrt(den);
    c.satisfied = 2.0 * a2 * c.gamma * c.gamma + c.delta * c.delta < 1.0;
    return c;
}

}  // namespace osnst::diag
