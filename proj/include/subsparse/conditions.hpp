#pragma once

#include "subsparse/geometry.hpp"
#include "subsparse/types.hpp"

#include <cstdint>

namespace subsparse {

/// Outcome of a strict-inequality certificate. Margins inside the +/-tol::strict
/// band are reported as boundary rather than forced into a boolean.
enum class Verdict { holds, boundary, fails };

std::string to_string(Verdict verdict);
Verdict strict_verdict(double margin);

/// Geometric certificate of a partitioned dictionary: covering radius of the
/// inliers, outlier distances to the subspace and to the dual points, and the
/// PRC / DRC verdicts with margins.
struct ConditionReport {
    double gamma0 = 0.0;
    double dist_ac_s0 = 0.0;        // s(Ac, S0); +inf when Ac is empty
    double dist_ac_d0 = 0.0;        // s(Ac, D0); +inf when Ac is empty
    double max_dual_response = 0.0;  // max over v in D0 of ||Ac^T v||_inf
    double mutual_coherence = 0.0;   // mu(A) over the whole dictionary
    double prc_margin = 0.0;         // dist_ac_s0 - gamma0
    double drc_margin = 0.0;         // dist_ac_d0 - gamma0
    Verdict prc_verdict = Verdict::fails;
    Verdict drc_verdict = Verdict::fails;
    bool prc_holds = false;
    bool drc_holds = false;
    bool dual_response_holds = false;  // max_dual_response < 1
    int num_dual_points = 0;
};

/// Evaluates PRC and DRC for a dictionary with a partition. s(Ac, S0) is the
/// closed-form projection angle; s(Ac, D0) runs against the enumerated dual
/// points. An empty outlier set certifies both conditions vacuously.
ConditionReport analyze_conditions(const Dictionary& dict, const DualPointOptions& options = {});

/// Same certificate computed from explicit inlier/outlier atom matrices.
/// `all_atoms` feeds the mutual-coherence field.
ConditionReport analyze_partition(const Matrix& inliers, const Matrix& outliers,
                                  const Matrix& all_atoms, const DualPointOptions& options = {});

/// Closed-form dual points of a full-column-rank atom set:
/// { A0 (A0^T A0)^{-1} u : u in {-1,+1}^{s0} }, exactly 2^{s0} points.
DualPointSet dual_points_independent(const Matrix& atoms);

struct CoherencePartitionRecord {
    IndexSet inliers;
    bool independent = false;
    Verdict prc = Verdict::fails;
    Verdict drc = Verdict::fails;
};

struct CoherenceReport {
    double mu = 0.0;
    double threshold = 0.0;  // 1 / (2 s0 - 1)
    bool applicable = false; // mu < threshold
    bool all_pass = false;   // every partition independent with PRC and DRC holding
    std::vector<CoherencePartitionRecord> records;
};

/// Checks the mutual-coherence route to recovery: when mu(A) < 1/(2 s0 - 1),
/// every s0-subset taken as inliers must be linearly independent and satisfy
/// PRC and DRC. Enumerates all binom(J, s0) partitions (error above the cap).
CoherenceReport coherence_recovery_check(const Dictionary& dict, int s0,
                                         std::uint64_t exhaustive_cap = 1'000'000,
                                         const DualPointOptions& options = {});

struct EquivalentConditionSample {
    Method method = Method::bp;
    int samples = 0;
    int violations = 0;
    IndexSet violating_samples;  // sample indices
    Matrix witnesses;            // ambient_dim x violations
};

/// True iff b witnesses failure of the sampled equivalent condition:
/// BP compares objective values p(A0, b) vs p(Ac, b); OMP compares spherical
/// distances of +/-b to the two atom sets.
bool equivalent_condition_violated(const Matrix& inliers, const Matrix& outliers, Method method,
                                   const Vector& b);

/// Draws N uniform directions in S0 and counts equivalent-condition
/// violations; deterministic per seed and thread count.
EquivalentConditionSample equivalent_condition_sample(const Dictionary& dict, Method method,
                                                      int num_samples, std::uint64_t seed,
                                                      int threads = 0);

}  // namespace subsparse
