#include "subsparse/classifier.hpp"

#include "subsparse/random_model.hpp"
#include "subsparse/rng.hpp"
#include "subsparse/solvers.hpp"

#include <doctest.h>

#include <cmath>

using namespace subsparse;

namespace {

// two orthogonal coordinate planes in R^4, two atoms each
UnionModel coordinate_planes_model() {
    Matrix atoms = Matrix::Identity(4, 4);
    return UnionModel::build(Dictionary(atoms, std::nullopt, std::vector<IndexSet>{{0, 1}, {2, 3}}));
}

}  // namespace

TEST_CASE("orthogonal planes satisfy the classification condition") {
    const UnionModel model = coordinate_planes_model();
    const ClassificationConditionReport report = check_classification_condition(model);
    CHECK(report.all_hold);
    REQUIRE(report.groups.size() == 2);
    for (const auto& group : report.groups) {
        CHECK(group.covering_radius == doctest::Approx(M_PI / 4).epsilon(1e-12));
        CHECK(group.cross_distance == doctest::Approx(M_PI / 2).epsilon(1e-12));
    }
}

TEST_CASE("classify labels atoms and in-subspace queries") {
    const UnionModel model = coordinate_planes_model();

    const Classification atom2 = classify(model, model.dictionary.atom(2), Method::bp);
    CHECK(atom2.ok);
    CHECK(atom2.label == 1);
    CHECK(atom2.single_group);

    Rng rng(5);
    for (int rep = 0; rep < 10; ++rep) {
        const Vector q = sample_unit_in_subspace(model.groups[0].basis, rng);
        for (Method method : {Method::bp, Method::omp}) {
            const Classification c = classify(model, q, method);
            CHECK(c.ok);
            CHECK(c.label == 0);
            CHECK(c.single_group);
        }
    }
}

TEST_CASE("classification is invariant to positive scaling") {
    const UnionModel model = coordinate_planes_model();
    Rng rng(6);
    const Vector q = sample_unit_in_subspace(model.groups[1].basis, rng);
    for (Method method : {Method::bp, Method::omp}) {
        const Classification a = classify(model, q, method);
        const Classification b = classify(model, 3.5 * q, method);
        CHECK(a.label == b.label);
        CHECK(a.single_group == b.single_group);
    }
}

TEST_CASE("duplicate subspaces defeat the condition") {
    Matrix atoms(4, 4);
    atoms.col(0) = Vector::Unit(4, 0);
    atoms.col(1) = Vector::Unit(4, 1);
    atoms.col(2) = (Vector::Unit(4, 0) + Vector::Unit(4, 1)).normalized();
    atoms.col(3) = (Vector::Unit(4, 0) - Vector::Unit(4, 1)).normalized();
    const UnionModel model =
        UnionModel::build(Dictionary(atoms, std::nullopt, std::vector<IndexSet>{{0, 1}, {2, 3}}));
    const ClassificationConditionReport report = check_classification_condition(model);
    CHECK(!report.all_hold);
    for (const auto& group : report.groups) CHECK(group.cross_distance < group.covering_radius);
}

TEST_CASE("classify flags infeasible queries") {
    Matrix atoms(3, 2);
    atoms.col(0) = Vector::Unit(3, 0);
    atoms.col(1) = Vector::Unit(3, 1);
    const UnionModel model =
        UnionModel::build(Dictionary(atoms, std::nullopt, std::vector<IndexSet>{{0}, {1}}));
    const Classification c = classify(model, Vector::Unit(3, 2), Method::bp);
    CHECK(!c.ok);
    CHECK(c.result.status == SolveStatus::infeasible);
    CHECK_THROWS_AS(classify(model, Vector::Zero(3), Method::bp), DomainError);
}

TEST_CASE("per-group geometry matches the core operations") {
    Rng rng(17);
    const UnionModel model = sample_union_model(12, {2, 3}, {10, 12}, 321);
    for (const auto& group : model.groups) {
        const Matrix atoms = model.dictionary.submatrix(group.indices);
        const SubspaceBasis basis = subspace_basis(atoms);
        CHECK(basis.rank() == group.dim());
        CHECK(covering_radius_exact(atoms, basis) == group.covering_radius);
        const DualPointSet duals = dual_points(atoms, basis);
        CHECK(duals.count() == group.duals.count());
        CHECK((duals.points - group.duals.points).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("certified random models classify correctly end to end") {
    int certified = 0;
    for (int attempt = 0; attempt < 8 && certified < 3; ++attempt) {
        const UnionModel model =
            sample_union_model(24, {2, 2}, {40, 40}, 1000 + static_cast<std::uint64_t>(attempt));
        if (!check_classification_condition(model).all_hold) continue;
        ++certified;
        for (size_t g = 0; g < model.groups.size(); ++g) {
            for (int q = 0; q < 10; ++q) {
                Rng rng = Rng::substream(50 * (attempt + 1), 10 * g + q);
                const Vector query = sample_unit_in_subspace(model.groups[g].basis, rng);
                for (Method method : {Method::bp, Method::omp}) {
                    const Classification c = classify(model, query, method);
                    CHECK(c.ok);
                    CHECK(c.label == static_cast<int>(g));
                    CHECK(c.single_group);
                }
            }
        }
    }
    CHECK(certified >= 3);
}

TEST_CASE("classification bound reduces to the recovery bound for one group") {
    const double reduction = classification_probability_bound(50, {2}, {200});
    CHECK(reduction == doctest::Approx(drc_probability_bound(50, 2, 100.0, 1.0)).epsilon(1e-12));
    CHECK(reduction == doctest::Approx(0.747757033546489).epsilon(1e-12));
}

TEST_CASE("classification bound shape") {
    // decreasing as any group dimension grows, at high density
    CHECK(classification_probability_bound(100, {2}, {400}) >
          classification_probability_bound(100, {3}, {600}));
    // increasing in every group density
    CHECK(classification_probability_bound(100, {2, 2}, {400, 400}) >
          classification_probability_bound(100, {2, 2}, {200, 200}));

    CHECK_THROWS_AS(classification_probability_bound(100, {1}, {100}), DomainError);
    CHECK_THROWS_AS(classification_probability_bound(10, {3}, {300}), DomainError);
    CHECK_THROWS_AS(classification_probability_bound(100, {2}, {1}), DomainError);
    // the error message names the offending group
    try {
        classification_probability_bound(100, {2, 3, 9}, {400, 600, 900});
        CHECK(false);
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("group 2") != std::string::npos);
    }
}

TEST_CASE("sample_union_model is deterministic") {
    const UnionModel a = sample_union_model(10, {2, 2}, {8, 9}, 77);
    const UnionModel b = sample_union_model(10, {2, 2}, {8, 9}, 77);
    CHECK((a.dictionary.atoms() - b.dictionary.atoms()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(a.total_points() == 17);
    CHECK(a.proportion(0) == doctest::Approx(8.0 / 17));
    CHECK(a.k(0) == doctest::Approx(10 / 4.0 - 2));
}
