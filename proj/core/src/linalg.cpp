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

#include "osnst/linalg.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <string>

namespace osnst::linalg {

RowPseudoInverse::RowPseudoInverse(Mat a) : a_(std::move(a)) {
    if (a_.rows() < 1 || a_.cols() < 1) {
        throw dimension_error("RowPseudoInverse: empty matrix");
    }
    gram_llt_.compute(a_ * a_.transpose());
    if (gram_llt_.info() != Eigen::Success) {
        throw rank_deficiency_error(
            "RowPseudoInverse: A A^T is not positive definite "
            "(A lacks full row rank)",
            {});
    }
}

Mat RowPseudoInverse::apply(const Mat& rhs) const {
    if (rhs.rows() != a_.rows()) {
        throw dimension_error("RowPseudoInverse::apply: rhs has " +
                              std::to_string(rhs.rows()) + " rows, expected " +
                              std::to_string(a_.rows()));
    }
    return a_.transpose() * gram_llt_.solve(rhs);
}

Mat RowPseudoInverse::solve_gram(const Mat& rhs) const {
    if (rhs.rows() != a_.rows()) {
        throw dimension_error("RowPseudoInverse::solve_gram: bad rhs rows");
    }
    return gram_llt_.solve(rhs);
}

Mat orth_basis(const Mat& x, double rank_tol) {
    if (x.rows() < 1 || x.cols() < 1) {
        throw dimension_error("orth_basis: empty matrix");
    }
    Eigen::BDCSVD<Mat> svd(x, Eigen::ComputeThinU);
    const Vec& sigma = svd.singularValues();
    if (sigma.size() == 0 || sigma(0) <= 0.0) {
        throw degenerate_input_error("orth_basis: all-zero input");
    }
    Eigen::Index r = 0;
    while (r < sigma.size() && sigma(r) > rank_tol * sigma(0)) ++r;
    return svd.matrixU().leftCols(r);
}

Mat columns(const Mat& a, const IndexSet& cols) {
    Mat sub(a.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j] < 0 || cols[j] >= a.cols()) {
            throw dimension_error("columns: index " + std::to_string(cols[j]) +
                                  " out of range");
        }
        sub.col(static_cast<Eigen::Index>(j)) = a.col(cols[j]);
    }
    return sub;
}

Mat restricted_lsq(const Mat& a, const IndexSet& cols, const Mat& b) {
    if (b.rows() != a.rows()) {
        throw dimension_error("restricted_lsq: rhs row count mismatch");
    }
    if (cols.empty()) {
        throw dimension_error("restricted_lsq: empty index set");
    }
    Mat sub = columns(a, cols);
    Eigen::ColPivHouseholderQR<Mat> qr(sub);
    if (qr.rank() < sub.cols()) {
        throw rank_deficiency_error(
            "restricted_lsq: restricted matrix is rank deficient (rank " +
                std::to_string(qr.rank()) + " of " +
                std::to_string(sub.cols()) + ")",
            cols);
    }
    return qr.solve(b);
}

double spectral_norm(const Mat& a, double tol, int max_iter) {
    if (a.rows() < 1 || a.cols() < 1) {
        throw dimension_error("spectral_norm: empty matrix");
    }
    // Power iteration on B = A^T A; the Rayleigh quotient estimate of
    // lambda_max(B) converges at the square of the eigenvector rate.
    Vec v = Vec::Ones(a.cols());
    v.normalize();
    double lambda = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        Vec w = a.transpose() * (a * v);
        const double norm_w = w.norm();
        if (norm_w == 0.0) return 0.0;  // v in the null space; ||A|| <= tiny
        const double lambda_next = v.dot(w);
        v = w / norm_w;
        if (it > 0 && std::abs(lambda_next - lambda) <=
                          tol * std::max(std::abs(lambda_next), 1e-300)) {
            lambda = lambda_next;
            break;
        }
        lambda = lambda_next;
    }
    return std::sqrt(std::max(lambda, 0.0));
}

}  // namespace osnst::linalg
