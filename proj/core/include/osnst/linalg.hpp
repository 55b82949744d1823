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

#ifndef OSNST_LINALG_HPP
#define OSNST_LINALG_HPP

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <vector>

#include "osnst/errors.hpp"

namespace osnst {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

/// Sorted set of 0-based column/row indices.
using IndexSet = std::vector<int>;

namespace linalg {

/// Applies A^T (A A^T)^{-1} for a fixed full-row-rank matrix A.
///
/// The Gram matrix A A^T is factored (Cholesky) once at construction and
/// reused for every apply, which is the dominant cost saver in the solver
/// loop where the same projection is applied at each iteration.
class RowPseudoInverse {
public:
    /// Throws rank_deficiency_error if A A^T is not numerically SPD.
    explicit RowPseudoInverse(Mat a);

    /// Returns A^T (A A^T)^{-1} rhs; rhs must have matrix().rows() rows.
    Mat apply(const Mat& rhs) const;

    /// Returns (A A^T)^{-1} rhs.
    Mat solve_gram(const Mat& rhs) const;

    const Mat& matrix() const noexcept { return a_; }

private:
    Mat a_;
    Eigen::LLT<Mat> gram_llt_;
};

/// Orthonormal basis of the column space of x, computed by SVD.
/// Columns with singular value <= rank_tol * sigma_max are dropped.
/// Throws degenerate_input_error for an all-zero x.
Mat orth_basis(const Mat& x, double rank_tol = 1e-10);

/// Extracts the columns of a listed in cols (ascending or not), in order.
Mat columns(const Mat& a, const IndexSet& cols);

/// argmin_Z || A_cols Z - b ||_F via column-pivoted QR.
/// Throws rank_deficiency_error (carrying cols) if A_cols is numerically
/// rank deficient.
Mat restricted_lsq(const Mat& a, const IndexSet& cols, const Mat& b);

/// Largest singular value of a, by power iteration on A^T A with a
/// deterministic (normalized all-ones) start vector.
double spectral_norm(const Mat& a, double tol = 1e-10, int max_iter = 10000);

}  // namespace linalg
}  // namespace osnst

#endif  // OSNST_LINALG_HPP
