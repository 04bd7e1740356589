#pragma once

#include "subsparse/conditions.hpp"
#include "subsparse/geometry.hpp"
#include "subsparse/types.hpp"

#include <cstdint>

namespace subsparse {

struct GroupGeometry {
    IndexSet indices;
    SubspaceBasis basis;
    DualPointSet duals;
    double covering_radius = 0.0;  // gamma_i

    int size() const { return static_cast<int>(indices.size()); }         // s_i
    int dim() const { return basis.rank(); }                              // d_i
    double density() const { return static_cast<double>(size()) / dim(); }  // rho_i
};

/// A dictionary over a union of subspaces plus per-group geometry.
struct UnionModel {
    Dictionary dictionary;
    std::vector<GroupGeometry> groups;

    int total_points() const;
    double proportion(int group) const;  // p_i = s_i / sum_j s_j
    double k(int group) const;           // k_i = D / (2 d_i) - d_i

    static UnionModel build(Dictionary dict, const DualPointOptions& options = {});
};

struct Classification {
    bool ok = false;       // solver produced a usable representation
    int label = -1;        // argmax of per-group l1 coefficient mass
    bool single_group = false;  // support contained in one group
    RecoveryResult result;
};

/// Runs the chosen solver on the full dictionary and labels the query by the
/// group carrying the largest l1 coefficient mass (ties to the lowest group).
Classification classify(const UnionModel& model, const Vector& query, Method method);

struct GroupConditionReport {
    double covering_radius = 0.0;  // gamma_i
    double cross_distance = 0.0;   // s(D_i, A \ A_i)
    double margin = 0.0;
    Verdict verdict = Verdict::fails;
    bool holds = false;
};

struct ClassificationConditionReport {
    std::vector<GroupConditionReport> groups;
    bool all_hold = false;
};

/// Certifies gamma_i < s(D_i, A \ A_i) for every group; a sufficient
/// condition for classification to succeed on every query in the union.
ClassificationConditionReport check_classification_condition(const UnionModel& model);

/// Closed-form lower bound on the probability that a random union model
/// (Haar subspaces, uniform points) classifies every query correctly.
/// Requires 2 <= d_i < sqrt(D/2) and rho_i >= 1 per group.
double classification_probability_bound(int ambient_dim, const std::vector<int>& dims,
                                        const std::vector<int>& counts);

/// Draws a random union model: independent Haar subspaces with uniform unit
/// points on each. Deterministic in the seed.
UnionModel sample_union_model(int ambient_dim, const std::vector<int>& dims,
                              const std::vector<int>& counts, std::uint64_t seed,
                              const DualPointOptions& options = {});

}  // namespace subsparse
