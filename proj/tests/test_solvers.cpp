#include "subsparse/solvers.hpp"

#include "oracles.hpp"
#include "subsparse/geometry.hpp"
#include "subsparse/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace subsparse;

namespace {

Vector unit(int dim, int axis) {
    Vector v = Vector::Zero(dim);
    v[axis] = 1.0;
    return v;
}

Matrix spiked_dictionary() {
    // e1, e2 and their normalized sum
    Matrix a(2, 3);
    a.col(0) = unit(2, 0);
    a.col(1) = unit(2, 1);
    a.col(2) = (unit(2, 0) + unit(2, 1)) / std::sqrt(2.0);
    return a;
}

// dictionary with small mutual coherence: random rotation of the identity
// plus a mild perturbation, re-normalized
Matrix incoherent_dictionary(Rng& rng, int dim, double wiggle) {
    Matrix g(dim, dim);
    for (int j = 0; j < dim; ++j) g.col(j) = rng.gaussian_vector(dim);
    const Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
    for (int j = 0; j < dim; ++j) {
        q.col(j) += wiggle * rng.gaussian_vector(dim);
        q.col(j) /= q.col(j).norm();
    }
    return q;
}

}  // namespace

TEST_CASE("omp picks the single matching atom") {
    Matrix a = Matrix::Identity(3, 3);
    const RecoveryResult r = omp_solve(a, unit(3, 1));
    CHECK(r.status == SolveStatus::converged);
    CHECK(r.support == IndexSet{1});
    CHECK(r.coefficients[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.iterations == 1);
}

TEST_CASE("omp on the zero signal") {
    Matrix a = Matrix::Identity(3, 3);
    const RecoveryResult r = omp_solve(a, Vector::Zero(3));
    CHECK(r.status == SolveStatus::converged);
    CHECK(r.support.empty());
    CHECK(r.iterations == 0);
}

TEST_CASE("omp greedy rule prefers the combined atom") {
    const Matrix a = spiked_dictionary();
    const RecoveryResult r = omp_solve(a, a.col(2));
    CHECK(r.status == SolveStatus::converged);
    CHECK(r.support == IndexSet{2});
    CHECK(r.iterations == 1);
}

TEST_CASE("omp residuals decrease strictly and stay orthogonal to selections") {
    Rng rng(17);
    const int dim = 8, atoms_count = 12;
    Matrix a(dim, atoms_count);
    for (int j = 0; j < atoms_count; ++j) a.col(j) = rng.unit_vector(dim);
    const Vector b = a * rng.gaussian_vector(atoms_count);

    double previous = b.norm();
    for (int k = 1; k <= 6; ++k) {
        const RecoveryResult r = omp_solve(a, b, 1e-12, k);
        if (r.status == SolveStatus::converged && r.iterations < k) break;
        CHECK(r.residual_norm < previous);
        previous = r.residual_norm;

        // no repeats: support size equals iteration count
        CHECK(static_cast<int>(thresholded_support(r.coefficients, 0.0).size()) <= k);
        // residual orthogonal to every selected atom
        const Vector residual = b - a * r.coefficients;
        for (int j : r.support) CHECK(std::abs(a.col(j).dot(residual)) < 1e-9);
    }
}

TEST_CASE("omp reports budget_exceeded when the residual cannot vanish") {
    Matrix a(3, 2);
    a.col(0) = unit(3, 0);
    a.col(1) = unit(3, 1);
    const RecoveryResult r = omp_solve(a, unit(3, 2), 1e-9, 5);
    CHECK(r.status == SolveStatus::budget_exceeded);
    CHECK(r.residual_norm == doctest::Approx(1.0));
}

TEST_CASE("bp primal on an orthonormal dictionary") {
    Matrix a = Matrix::Identity(4, 4);
    const RecoveryResult r = bp_primal(a, a.col(2));
    CHECK(r.status == SolveStatus::converged);
    CHECK(r.support == IndexSet{2});
    CHECK(r.objective == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("bp primal prefers the single combined atom") {
    const Matrix a = spiked_dictionary();
    const RecoveryResult r = bp_primal(a, a.col(2));
    CHECK(r.status == SolveStatus::converged);
    CHECK(r.objective == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.support == IndexSet{2});
    // the split representation x1 = x2 = 1/sqrt(2) would cost sqrt(2)
    CHECK(oracle::l1_bruteforce(a, a.col(2)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("bp primal detects infeasibility") {
    Matrix a(3, 2);
    a.col(0) = unit(3, 0);
    a.col(1) = unit(3, 1);
    const RecoveryResult r = bp_primal(a, unit(3, 2));
    CHECK(r.status == SolveStatus::infeasible);
    CHECK(std::isinf(r.objective));
}

TEST_CASE("bp primal matches the brute-force l1 oracle on random instances") {
    Rng rng(404);
    for (int trial = 0; trial < 25; ++trial) {
        const int dim = 3 + static_cast<int>(rng.uniform() * 3);   // 3..5
        const int cols = dim + 1 + static_cast<int>(rng.uniform() * 3);
        Matrix a(dim, cols);
        for (int j = 0; j < cols; ++j) a.col(j) = rng.unit_vector(dim);
        const Vector b = a * rng.gaussian_vector(cols);
        const RecoveryResult r = bp_primal(a, b);
        REQUIRE(r.status == SolveStatus::converged);
        CHECK(r.residual_norm <= tol::feas * std::max(1.0, b.norm()));
        CHECK(r.objective == doctest::Approx(oracle::l1_bruteforce(a, b)).epsilon(1e-8));
    }
}

TEST_CASE("bp dual attains the primal objective") {
    Matrix a = Matrix::Identity(3, 3);
    const BpDualResult d = bp_dual(a, unit(3, 0));
    CHECK(!d.unbounded);
    CHECK(d.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK((a.transpose() * d.omega).cwiseAbs().maxCoeff() <= 1 + 1e-9);

    Rng rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const int dim = 3 + static_cast<int>(rng.uniform() * 4);
        const int cols = 2 + static_cast<int>(rng.uniform() * 8);
        Matrix m(dim, cols);
        for (int j = 0; j < cols; ++j) m.col(j) = rng.unit_vector(dim);
        const Vector b = m * rng.gaussian_vector(cols);
        const RecoveryResult p = bp_primal(m, b);
        REQUIRE(p.status == SolveStatus::converged);
        const BpDualResult d2 = bp_dual(m, b);
        REQUIRE(!d2.unbounded);
        CHECK(std::abs(p.objective - d2.value) <= tol::duality_gap);
        CHECK((m.transpose() * d2.omega).cwiseAbs().maxCoeff() <= 1 + 1e-8);
    }
}

TEST_CASE("bp dual signals unboundedness on infeasible primals") {
    Matrix a(2, 1);
    a.col(0) = unit(2, 0);
    const BpDualResult d = bp_dual(a, unit(2, 1));
    CHECK(d.unbounded);
}

TEST_CASE("l0 oracle basics") {
    Rng rng(88);
    Matrix a(6, 8);
    for (int j = 0; j < 8; ++j) a.col(j) = rng.unit_vector(6);

    const RecoveryResult single = l0_oracle(a, a.col(4), 3);
    CHECK(single.status == SolveStatus::converged);
    CHECK(single.support == IndexSet{4});

    const RecoveryResult zero = l0_oracle(a, Vector::Zero(6), 3);
    CHECK(zero.status == SolveStatus::converged);
    CHECK(zero.support.empty());

    Matrix id = Matrix::Identity(6, 6);
    const Vector b = 0.6 * id.col(0) + 0.8 * id.col(3);
    const RecoveryResult pair = l0_oracle(id, b, 4);
    CHECK(pair.support == IndexSet{0, 3});

    CHECK_THROWS_AS(l0_oracle(a, a.col(0), 13), DomainError);

    Matrix thin(3, 1);
    thin.col(0) = unit(3, 0);
    CHECK(l0_oracle(thin, unit(3, 1), 1).status == SolveStatus::infeasible);
}

TEST_CASE("bp objective never beats a feasible competitor") {
    Rng rng(555);
    for (int trial = 0; trial < 15; ++trial) {
        Matrix a(5, 9);
        for (int j = 0; j < 9; ++j) a.col(j) = rng.unit_vector(5);
        Vector planted = Vector::Zero(9);
        planted[1] = 1.3;
        planted[6] = -0.4;
        const Vector b = a * planted;
        const RecoveryResult bp = bp_primal(a, b);
        REQUIRE(bp.status == SolveStatus::converged);
        CHECK(bp.objective <= planted.cwiseAbs().sum() + 1e-9);
        const RecoveryResult l0 = l0_oracle(a, b, 2);
        if (l0.status == SolveStatus::converged)
            CHECK(bp.objective <= l0.coefficients.cwiseAbs().sum() + 1e-9);
    }
}

TEST_CASE("classical coherence-based recovery of planted signals") {
    Rng rng(2718);
    for (int trial = 0; trial < 5; ++trial) {
        const Matrix a = incoherent_dictionary(rng, 10, 0.02);
        if (mutual_coherence(a) >= 1.0 / (2 * 3 - 1)) continue;
        for (int rep = 0; rep < 10; ++rep) {
            Vector planted = Vector::Zero(10);
            IndexSet support;
            while (support.size() < 3) {
                const int j = static_cast<int>(rng.uniform() * 10);
                if (std::find(support.begin(), support.end(), j) == support.end())
                    support.push_back(j);
            }
            std::sort(support.begin(), support.end());
            for (int j : support) planted[j] = (rng.uniform() < 0.5 ? -1 : 1) * (0.5 + rng.uniform());
            const Vector b = a * planted;

            for (const RecoveryResult& r :
                 {omp_solve(a, b), bp_primal(a, b), l0_oracle(a, b, 3)}) {
                REQUIRE(r.status == SolveStatus::converged);
                CHECK(thresholded_support(r.coefficients, 1e-6) == support);
                CHECK((r.coefficients - planted).cwiseAbs().maxCoeff() < 1e-6);
            }
        }
    }
}

TEST_CASE("is_subspace_sparse") {
    RecoveryResult r;
    r.status = SolveStatus::converged;
    r.coefficients = Vector::Zero(5);
    r.coefficients[0] = 0.4;
    r.coefficients[1] = -2.0;
    r.support = {0, 1};
    CHECK(is_subspace_sparse(r, {0, 1, 2}));
    CHECK(!is_subspace_sparse(r, {1, 2}));

    RecoveryResult empty;
    empty.status = SolveStatus::converged;
    empty.coefficients = Vector::Zero(5);
    CHECK(is_subspace_sparse(empty, {}));

    RecoveryResult bad;
    bad.status = SolveStatus::infeasible;
    bad.coefficients = Vector::Zero(5);
    CHECK_THROWS_AS(is_subspace_sparse(bad, {0}), DomainError);
}
