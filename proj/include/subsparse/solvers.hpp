#pragma once

#include "subsparse/types.hpp"

namespace subsparse {

/// Orthogonal matching pursuit: greedily selects the atom with the largest
/// absolute correlation (ties to the lowest index within tol::tie), refits by
/// least squares on the selected set, and stops once the residual drops below
/// eps_res * max(1, ||b||). max_iter <= 0 selects min(D, J).
RecoveryResult omp_solve(const Matrix& atoms, const Vector& b, double eps_res = 1e-9,
                         int max_iter = 0);

/// Basis pursuit, min ||x||_1 s.t. A x = b, solved as an exact LP on the
/// nonnegative split of x. Infeasible b yields status infeasible with a +inf
/// objective.
RecoveryResult bp_primal(const Matrix& atoms, const Vector& b, double eps_opt = 1e-8);

struct BpDualResult {
    Vector omega;       // maximizer of <omega, b> subject to ||A^T omega||_inf <= 1
    double value = 0.0;
    bool unbounded = false;  // the primal was infeasible
    int iterations = 0;
};

/// Dual of basis pursuit; extracted from the optimal simplex basis, so strong
/// duality holds to solver accuracy whenever the primal is feasible.
BpDualResult bp_dual(const Matrix& atoms, const Vector& b, double eps_opt = 1e-8);

/// Exhaustive minimum-support solver: scans supports of size 0..k_max in
/// lexicographic order and returns the first one whose least-squares fit is
/// feasible. k_max is capped at 12.
RecoveryResult l0_oracle(const Matrix& atoms, const Vector& b, int k_max);

/// True iff every support index of a converged result belongs to `inliers`.
bool is_subspace_sparse(const RecoveryResult& result, const IndexSet& inliers,
                        double eps_support = tol::support);

}  // namespace subsparse
