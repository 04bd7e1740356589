#include "subsparse/simplex.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace subsparse::lp {

namespace {

constexpr double kPivotTol = 1e-10;

enum class CoreStatus { optimal, unbounded, iteration_limit };

// Primal revised simplex on min c^T x, A x = b, x >= 0 from a given basis.
// Bland's rule on both the entering and the leaving choice prevents cycling.
// The basis factorization is rebuilt every iteration; exactness over speed.
CoreStatus simplex_core(const Matrix& a, const Vector& b, const Vector& c,
                        std::vector<int>& basis, double opt_tol, int max_iterations,
                        int& iterations, Vector& x_basic, Vector& y) {
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());
    const double entering_tol = opt_tol * std::max(1.0, c.cwiseAbs().maxCoeff());

    std::vector<char> in_basis(static_cast<size_t>(n), 0);
    for (int r = 0; r < m; ++r) in_basis[static_cast<size_t>(basis[r])] = 1;

    Matrix basis_matrix(m, m);
    Vector c_basic(m);
    while (true) {
        for (int r = 0; r < m; ++r) {
            basis_matrix.col(r) = a.col(basis[r]);
            c_basic[r] = c[basis[r]];
        }
        Eigen::PartialPivLU<Matrix> lu(basis_matrix);
        x_basic = lu.solve(b);
        y = lu.transpose().solve(c_basic);

        int entering = -1;
        for (int j = 0; j < n; ++j) {
            if (in_basis[static_cast<size_t>(j)]) continue;
            const double reduced = c[j] - a.col(j).dot(y);
            if (reduced < -entering_tol) {
                entering = j;
                break;  // Bland: lowest eligible index
            }
        }
        if (entering < 0) return CoreStatus::optimal;

        if (++iterations > max_iterations) return CoreStatus::iteration_limit;

        const Vector direction = lu.solve(a.col(entering));
        double best_ratio = std::numeric_limits<double>::infinity();
        for (int r = 0; r < m; ++r) {
            if (direction[r] > kPivotTol) {
                const double ratio = std::max(x_basic[r], 0.0) / direction[r];
                best_ratio = std::min(best_ratio, ratio);
            }
        }
        if (!std::isfinite(best_ratio)) return CoreStatus::unbounded;

        // among rows attaining the minimum ratio, leave the smallest variable index
        int leaving_row = -1;
        const double ratio_band = best_ratio + 1e-12 * (1.0 + best_ratio);
        for (int r = 0; r < m; ++r) {
            if (direction[r] > kPivotTol &&
                std::max(x_basic[r], 0.0) / direction[r] <= ratio_band) {
                if (leaving_row < 0 || basis[r] < basis[leaving_row]) leaving_row = r;
            }
        }

        in_basis[static_cast<size_t>(basis[leaving_row])] = 0;
        in_basis[static_cast<size_t>(entering)] = 1;
        basis[leaving_row] = entering;
    }
}

}  // namespace

LpSolution solve_standard_form(const Matrix& constraints, const Vector& rhs, const Vector& costs,
                               double opt_tol, int max_iterations) {
    const int m_orig = static_cast<int>(constraints.rows());
    const int n = static_cast<int>(constraints.cols());
    if (rhs.size() != m_orig || costs.size() != n)
        throw DomainError("solve_standard_form: dimension mismatch");
    if (max_iterations <= 0) max_iterations = 200 + 40 * (m_orig + n);

    // Row signs so the phase-one starting point is nonnegative.
    Matrix a(m_orig, n);
    Vector b(m_orig);
    std::vector<double> row_sign(static_cast<size_t>(m_orig));
    for (int r = 0; r < m_orig; ++r) {
        const double s = rhs[r] < 0.0 ? -1.0 : 1.0;
        row_sign[static_cast<size_t>(r)] = s;
        a.row(r) = s * constraints.row(r);
        b[r] = s * rhs[r];
    }

    LpSolution out;
    out.x = Vector::Zero(n);
    out.y = Vector::Zero(m_orig);

    // Phase one: minimize the sum of artificial variables.
    Matrix a_ext(m_orig, n + m_orig);
    a_ext.leftCols(n) = a;
    a_ext.rightCols(m_orig) = Matrix::Identity(m_orig, m_orig);
    Vector c1 = Vector::Zero(n + m_orig);
    c1.tail(m_orig).setOnes();

    std::vector<int> basis(static_cast<size_t>(m_orig));
    for (int r = 0; r < m_orig; ++r) basis[static_cast<size_t>(r)] = n + r;

    Vector x_basic, y;
    const CoreStatus phase1 =
        simplex_core(a_ext, b, c1, basis, opt_tol, max_iterations, out.iterations, x_basic, y);
    if (phase1 != CoreStatus::optimal) {
        out.status = LpStatus::stalled;
        return out;
    }

    double artificial_mass = 0.0;
    for (int r = 0; r < m_orig; ++r)
        if (basis[static_cast<size_t>(r)] >= n) artificial_mass += std::max(x_basic[r], 0.0);
    if (artificial_mass > tol::feas * std::max(1.0, b.norm())) {
        out.status = LpStatus::infeasible;
        out.objective = std::numeric_limits<double>::infinity();
        return out;
    }

    // Drive zero-level artificials out of the basis; rows with no available
    // pivot are redundant and get dropped.
    std::vector<int> kept_rows;
    kept_rows.reserve(static_cast<size_t>(m_orig));
    {
        std::vector<char> redundant(static_cast<size_t>(m_orig), 0);
        for (int r = 0; r < m_orig; ++r) {
            if (basis[static_cast<size_t>(r)] < n) continue;
            Matrix basis_matrix(m_orig, m_orig);
            for (int k = 0; k < m_orig; ++k) basis_matrix.col(k) = a_ext.col(basis[static_cast<size_t>(k)]);
            Eigen::PartialPivLU<Matrix> lu(basis_matrix);
            std::vector<char> in_basis(static_cast<size_t>(n), 0);
            for (int k = 0; k < m_orig; ++k)
                if (basis[static_cast<size_t>(k)] < n) in_basis[static_cast<size_t>(basis[static_cast<size_t>(k)])] = 1;
            int pivot_col = -1;
            for (int j = 0; j < n && pivot_col < 0; ++j) {
                if (in_basis[static_cast<size_t>(j)]) continue;
                const Vector w = lu.solve(a.col(j));
                if (std::abs(w[r]) > kPivotTol) pivot_col = j;
            }
            if (pivot_col >= 0)
                basis[static_cast<size_t>(r)] = pivot_col;
            else
                redundant[static_cast<size_t>(r)] = 1;
        }
        for (int r = 0; r < m_orig; ++r)
            if (!redundant[static_cast<size_t>(r)]) kept_rows.push_back(r);
    }

    const int m = static_cast<int>(kept_rows.size());
    Matrix a2(m, n);
    Vector b2(m);
    std::vector<int> basis2;
    basis2.reserve(static_cast<size_t>(m));
    for (int r = 0; r < m; ++r) {
        a2.row(r) = a.row(kept_rows[static_cast<size_t>(r)]);
        b2[r] = b[kept_rows[static_cast<size_t>(r)]];
        basis2.push_back(basis[static_cast<size_t>(kept_rows[static_cast<size_t>(r)])]);
    }
    for (int idx : basis2)
        if (idx >= n) throw SolverError("solve_standard_form: artificial variable survived phase one");

    const CoreStatus phase2 =
        simplex_core(a2, b2, costs, basis2, opt_tol, max_iterations, out.iterations, x_basic, y);
    if (phase2 == CoreStatus::iteration_limit) {
        out.status = LpStatus::stalled;
        return out;
    }
    if (phase2 == CoreStatus::unbounded) {
        out.status = LpStatus::unbounded;
        out.objective = -std::numeric_limits<double>::infinity();
        return out;
    }

    for (int r = 0; r < m; ++r) out.x[basis2[static_cast<size_t>(r)]] = x_basic[r];
    for (int r = 0; r < m; ++r) {
        const int orig = kept_rows[static_cast<size_t>(r)];
        out.y[orig] = row_sign[static_cast<size_t>(orig)] * y[r];
    }
    out.objective = costs.dot(out.x);
    out.status = LpStatus::optimal;
    return out;
}

}  // namespace subsparse::lp
