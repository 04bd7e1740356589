#pragma once

#include "subsparse/types.hpp"

namespace subsparse::lp {

enum class LpStatus { optimal, infeasible, unbounded, stalled };

struct LpSolution {
    LpStatus status = LpStatus::stalled;
    Vector x;          // primal solution (size n)
    Vector y;          // dual multipliers of the equality rows (size m)
    double objective = 0.0;
    int iterations = 0;
};

/// Solves min c^T x  s.t.  A x = b, x >= 0 by a two-phase revised simplex
/// method with Bland's anti-cycling rule. Redundant rows are detected in
/// phase one and removed; their dual multipliers are reported as zero.
/// Dense and exact-leaning: intended for desk-scale instances.
LpSolution solve_standard_form(const Matrix& constraints, const Vector& rhs, const Vector& costs,
                               double opt_tol = 1e-9, int max_iterations = 0);

}  // namespace subsparse::lp
