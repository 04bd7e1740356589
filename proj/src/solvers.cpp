#include "subsparse/solvers.hpp"

#include "subsparse/combinatorics.hpp"
#include "subsparse/simplex.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>

namespace subsparse {

RecoveryResult omp_solve(const Matrix& atoms, const Vector& b, double eps_res, int max_iter) {
    const int num_atoms = static_cast<int>(atoms.cols());
    const int dim = static_cast<int>(atoms.rows());
    if (b.size() != dim) throw DomainError("omp_solve: dimension mismatch");
    if (!(eps_res > 0.0)) throw DomainError("omp_solve: eps_res must be positive");
    if (max_iter <= 0) max_iter = std::min(dim, num_atoms);

    RecoveryResult result;
    result.coefficients = Vector::Zero(num_atoms);
    const double stop = eps_res * std::max(1.0, b.norm());

    Vector residual = b;
    result.residual_norm = residual.norm();
    if (result.residual_norm <= stop) {
        result.status = SolveStatus::converged;
        return result;
    }

    std::vector<int> selected;
    std::vector<char> used(static_cast<size_t>(num_atoms), 0);
    Matrix chosen(dim, 0);
    Vector fitted;
    for (int step = 1; step <= max_iter; ++step) {
        if (static_cast<int>(selected.size()) == num_atoms) break;

        const Vector corr = atoms.transpose() * residual;
        double best = -1.0;
        for (int j = 0; j < num_atoms; ++j)
            if (!used[static_cast<size_t>(j)]) best = std::max(best, std::abs(corr[j]));
        int pick = -1;
        for (int j = 0; j < num_atoms; ++j) {
            if (used[static_cast<size_t>(j)]) continue;
            if (std::abs(corr[j]) >= best - tol::tie) {
                pick = j;
                break;
            }
        }

        selected.push_back(pick);
        used[static_cast<size_t>(pick)] = 1;
        chosen.conservativeResize(Eigen::NoChange, chosen.cols() + 1);
        chosen.col(chosen.cols() - 1) = atoms.col(pick);

        fitted = chosen.colPivHouseholderQr().solve(b);
        residual = b - chosen * fitted;
        result.iterations = step;
        result.residual_norm = residual.norm();
        if (result.residual_norm <= stop) break;
    }

    for (size_t k = 0; k < selected.size(); ++k)
        result.coefficients[selected[k]] = fitted[static_cast<Eigen::Index>(k)];
    result.support = thresholded_support(result.coefficients);
    result.objective = static_cast<double>(result.support.size());
    result.status =
        result.residual_norm <= stop ? SolveStatus::converged : SolveStatus::budget_exceeded;
    return result;
}

namespace {

lp::LpSolution solve_bp_lp(const Matrix& atoms, const Vector& b, double eps_opt) {
    const int num_atoms = static_cast<int>(atoms.cols());
    if (b.size() != atoms.rows()) throw DomainError("basis pursuit: dimension mismatch");
    Matrix split(atoms.rows(), 2 * num_atoms);
    split.leftCols(num_atoms) = atoms;
    split.rightCols(num_atoms) = -atoms;
    const Vector costs = Vector::Ones(2 * num_atoms);
    lp::LpSolution sol = lp::solve_standard_form(split, b, costs, eps_opt);
    if (sol.status == lp::LpStatus::stalled)
        throw SolverError("basis pursuit: simplex stalled after " + std::to_string(sol.iterations) +
                          " iterations on a " + std::to_string(atoms.rows()) + "x" +
                          std::to_string(2 * num_atoms) + " program");
    if (sol.status == lp::LpStatus::unbounded)
        throw SolverError("basis pursuit: unbounded program (nonnegative objective cannot be unbounded)");
    return sol;
}

}  // namespace

RecoveryResult bp_primal(const Matrix& atoms, const Vector& b, double eps_opt) {
    const int num_atoms = static_cast<int>(atoms.cols());
    lp::LpSolution sol = solve_bp_lp(atoms, b, eps_opt);

    RecoveryResult result;
    result.iterations = sol.iterations;
    result.coefficients = Vector::Zero(num_atoms);
    if (sol.status == lp::LpStatus::infeasible) {
        result.status = SolveStatus::infeasible;
        result.objective = std::numeric_limits<double>::infinity();
        result.residual_norm = b.norm();
        return result;
    }
    result.coefficients = sol.x.head(num_atoms) - sol.x.tail(num_atoms);
    result.support = thresholded_support(result.coefficients);
    result.objective = result.coefficients.cwiseAbs().sum();
    result.residual_norm = (atoms * result.coefficients - b).norm();
    result.status = SolveStatus::converged;
    return result;
}

BpDualResult bp_dual(const Matrix& atoms, const Vector& b, double eps_opt) {
    lp::LpSolution sol = solve_bp_lp(atoms, b, eps_opt);
    BpDualResult result;
    result.iterations = sol.iterations;
    if (sol.status == lp::LpStatus::infeasible) {
        result.unbounded = true;
        result.value = std::numeric_limits<double>::infinity();
        return result;
    }
    result.omega = sol.y;
    result.value = b.dot(sol.y);
    return result;
}

RecoveryResult l0_oracle(const Matrix& atoms, const Vector& b, int k_max) {
    const int num_atoms = static_cast<int>(atoms.cols());
    if (b.size() != atoms.rows()) throw DomainError("l0_oracle: dimension mismatch");
    if (k_max < 0) throw DomainError("l0_oracle: k_max must be nonnegative");
    if (k_max > 12) throw DomainError("l0_oracle: k_max capped at 12 for combinatorial safety");

    RecoveryResult result;
    result.coefficients = Vector::Zero(num_atoms);
    const double stop = tol::feas * std::max(1.0, b.norm());

    result.residual_norm = b.norm();
    if (result.residual_norm <= stop) {
        result.status = SolveStatus::converged;
        return result;
    }

    for (int k = 1; k <= std::min(k_max, num_atoms); ++k) {
        std::vector<int> idx = first_combination(k);
        Matrix sub(atoms.rows(), k);
        do {
            for (int c = 0; c < k; ++c) sub.col(c) = atoms.col(idx[static_cast<size_t>(c)]);
            const Vector coef = sub.colPivHouseholderQr().solve(b);
            const double residual = (sub * coef - b).norm();
            if (residual <= stop) {
                for (int c = 0; c < k; ++c) result.coefficients[idx[static_cast<size_t>(c)]] = coef[c];
                result.support = thresholded_support(result.coefficients);
                result.objective = static_cast<double>(result.support.size());
                result.residual_norm = residual;
                result.iterations = k;
                result.status = SolveStatus::converged;
                return result;
            }
        } while (next_combination(idx, num_atoms));
    }

    result.status = SolveStatus::infeasible;
    result.objective = std::numeric_limits<double>::infinity();
    return result;
}

bool is_subspace_sparse(const RecoveryResult& result, const IndexSet& inliers, double eps_support) {
    if (result.status != SolveStatus::converged)
        throw DomainError("is_subspace_sparse: result did not converge");
    const IndexSet support = thresholded_support(result.coefficients, eps_support);
    std::vector<char> allowed;
    for (int j : inliers) {
        if (j < 0) throw DomainError("is_subspace_sparse: negative index");
        if (j >= static_cast<int>(allowed.size())) allowed.resize(static_cast<size_t>(j) + 1, 0);
        allowed[static_cast<size_t>(j)] = 1;
    }
    for (int j : support)
        if (j >= static_cast<int>(allowed.size()) || !allowed[static_cast<size_t>(j)]) return false;
    return true;
}

}  // namespace subsparse
