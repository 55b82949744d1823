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

#ifndef OSNST_SOLVER_HPP
#define OSNST_SOLVER_HPP

#include "osnst/model.hpp"

namespace osnst {

/// Euclidean projection of w_prev onto the affine feasible set
/// { X : phi X = y }: returns w_prev + phi^T (phi phi^T)^{-1} (y - phi w_prev).
Mat nst_project(const ProblemInstance& p, const linalg::RowPseudoInverse& pinv,
                const Mat& w_prev);

struct Selection {
    IndexSet indices;            // ascending, |indices| == count
    std::vector<double> scores;  // per-row basis norms, length N
    int basis_rank = 0;          // number of columns of the orthonormal basis
};

/// Scores row i by the Euclidean norm of the i-th row of orth_basis(x_k)
/// and returns the `count` highest-scoring rows. Ties break toward the
/// smaller row index. Throws degenerate_input_error when x_k is zero.
Selection select_support(const Mat& x_k, int count, double rank_tol = 1e-10);

/// Least-squares estimate supported on `support`: rows outside the set are
/// zero, rows inside solve argmin_Z || y - phi_support Z ||_F.
Mat feedback_step(const ProblemInstance& p, const IndexSet& support);

/// The full orthogonal-subspace thresholding iteration with null space
/// tuning and functional feedback.
RecoveryResult osnst_solve(const ProblemInstance& p, const SolverConfig& cfg);

/// Simultaneous orthogonal matching pursuit baseline. Greedily adds the
/// column whose correlation with the residual matrix has the largest
/// row norm, re-solving the restricted least squares each round;
/// `sparsity` rounds in total.
RecoveryResult somp_solve(const ProblemInstance& p, int sparsity);

}  // namespace osnst

#endif  // OSNST_SOLVER_HPP
