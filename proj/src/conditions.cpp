#include "subsparse/conditions.hpp"

#include "subsparse/combinatorics.hpp"
#include "subsparse/rng.hpp"
#include "subsparse/solvers.hpp"

#include <Eigen/Cholesky>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cmath>
#include <limits>

namespace subsparse {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double clamped_acos(double c) { return std::acos(std::clamp(c, -1.0, 1.0)); }
}  // namespace

std::string to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::holds: return "holds";
        case Verdict::boundary: return "boundary";
        case Verdict::fails: return "fails";
    }
    return "unknown";
}

Verdict strict_verdict(double margin) {
    if (margin >= tol::strict) return Verdict::holds;
    if (margin <= -tol::strict) return Verdict::fails;
    return Verdict::boundary;
}

ConditionReport analyze_partition(const Matrix& inliers, const Matrix& outliers,
                                  const Matrix& all_atoms, const DualPointOptions& options) {
    if (inliers.cols() == 0) throw DomainError("analyze_partition: empty inlier set");

    const SubspaceBasis basis = subspace_basis(inliers);
    const DualPointSet duals = dual_points(inliers, basis, options);

    ConditionReport report;
    report.num_dual_points = duals.count();
    report.gamma0 = clamped_acos(1.0 / duals.max_norm());
    report.mutual_coherence = mutual_coherence(all_atoms);

    if (outliers.cols() == 0) {
        report.dist_ac_s0 = kInf;
        report.dist_ac_d0 = kInf;
        report.max_dual_response = 0.0;
        report.prc_margin = kInf;
        report.drc_margin = kInf;
        report.prc_verdict = Verdict::holds;
        report.drc_verdict = Verdict::holds;
        report.prc_holds = report.drc_holds = report.dual_response_holds = true;
        return report;
    }

    // The infimum over the whole subspace is attained at the normalized
    // projection, so s(Ac, S0) reduces to the projection angle per outlier.
    double dist_s0 = kInf;
    for (int j = 0; j < outliers.cols(); ++j) {
        const double proj = (basis.basis.transpose() * outliers.col(j)).norm() / outliers.col(j).norm();
        dist_s0 = std::min(dist_s0, clamped_acos(proj));
    }
    report.dist_ac_s0 = dist_s0;
    report.dist_ac_d0 = set_distance(outliers, duals.points);
    report.max_dual_response = (outliers.transpose() * duals.points).cwiseAbs().maxCoeff();

    report.prc_margin = report.dist_ac_s0 - report.gamma0;
    // D0 lies in S0, so s(Ac, D0) >= s(Ac, S0); taking the max only removes
    // rounding noise and keeps PRC => DRC structural.
    report.drc_margin = std::max(report.dist_ac_d0, report.dist_ac_s0) - report.gamma0;
    report.prc_verdict = strict_verdict(report.prc_margin);
    report.drc_verdict = strict_verdict(report.drc_margin);
    report.prc_holds = report.prc_verdict == Verdict::holds;
    report.drc_holds = report.drc_verdict == Verdict::holds;
    report.dual_response_holds = report.max_dual_response < 1.0;
    return report;
}

ConditionReport analyze_conditions(const Dictionary& dict, const DualPointOptions& options) {
    if (!dict.has_partition()) throw DomainError("analyze_conditions: dictionary has no partition");
    return analyze_partition(dict.inlier_matrix(), dict.outlier_matrix(), dict.atoms(), options);
}

DualPointSet dual_points_independent(const Matrix& atoms) {
    const int s0 = static_cast<int>(atoms.cols());
    if (s0 < 1) throw DomainError("dual_points_independent: empty atom set");
    if (s0 > 24)
        throw ResourceError("dual_points_independent: 2^" + std::to_string(s0) +
                            " points exceed the practical budget");

    const SubspaceBasis basis = subspace_basis(atoms);
    if (basis.rank() < s0)
        throw DomainError("dual_points_independent: atoms are rank-deficient (rank " +
                          std::to_string(basis.rank()) + " < " + std::to_string(s0) +
                          "); use the general dual_points enumeration");

    const Matrix gram = atoms.transpose() * atoms;
    const Eigen::LLT<Matrix> llt(gram);

    DualPointSet out;
    out.generating_basis = basis;
    out.dedupe_tolerance = tol::dedupe;
    const std::uint64_t count = 1ull << s0;
    out.points.resize(atoms.rows(), static_cast<Eigen::Index>(count));
    Vector u(s0);
    for (std::uint64_t pattern = 0; pattern < count; ++pattern) {
        for (int i = 0; i < s0; ++i) u[i] = (pattern >> i) & 1ull ? -1.0 : 1.0;
        out.points.col(static_cast<Eigen::Index>(pattern)) = atoms * llt.solve(u);
    }
    return out;
}

CoherenceReport coherence_recovery_check(const Dictionary& dict, int s0,
                                         std::uint64_t exhaustive_cap,
                                         const DualPointOptions& options) {
    if (s0 < 1) throw DomainError("coherence_recovery_check: s0 must be at least 1");
    const int num_atoms = dict.num_atoms();
    if (s0 > num_atoms) throw DomainError("coherence_recovery_check: s0 exceeds dictionary size");

    CoherenceReport report;
    report.mu = mutual_coherence(dict.atoms());
    report.threshold = 1.0 / (2.0 * s0 - 1.0);
    report.applicable = report.mu < report.threshold;
    if (!report.applicable) return report;

    const double partitions = combination_count(num_atoms, s0);
    if (partitions > static_cast<double>(exhaustive_cap))
        throw ResourceError("coherence_recovery_check: " + std::to_string(partitions) +
                            " partitions exceed cap " + std::to_string(exhaustive_cap));

    report.all_pass = true;
    IndexSet inlier_idx = first_combination(s0);
    do {
        IndexSet outlier_idx;
        outlier_idx.reserve(static_cast<size_t>(num_atoms - s0));
        for (int j = 0, k = 0; j < num_atoms; ++j) {
            if (k < s0 && inlier_idx[static_cast<size_t>(k)] == j)
                ++k;
            else
                outlier_idx.push_back(j);
        }

        CoherencePartitionRecord record;
        record.inliers = inlier_idx;
        const Matrix a0 = dict.submatrix(inlier_idx);
        record.independent = subspace_basis(a0).rank() == s0;
        if (record.independent) {
            const ConditionReport cond =
                analyze_partition(a0, dict.submatrix(outlier_idx), dict.atoms(), options);
            record.prc = cond.prc_verdict;
            record.drc = cond.drc_verdict;
        }
        if (!record.independent || record.prc != Verdict::holds || record.drc != Verdict::holds)
            report.all_pass = false;
        report.records.push_back(std::move(record));
    } while (next_combination(inlier_idx, num_atoms));
    return report;
}

bool equivalent_condition_violated(const Matrix& inliers, const Matrix& outliers, Method method,
                                   const Vector& b) {
    if (method == Method::bp) {
        const double p_inlier = bp_primal(inliers, b).objective;
        const double p_outlier =
            outliers.cols() == 0 ? kInf : bp_primal(outliers, b).objective;
        return !(p_inlier < p_outlier);
    }
    Matrix signed_b(b.size(), 2);
    signed_b.col(0) = b;
    signed_b.col(1) = -b;
    const double lhs = set_distance(symmetrized(inliers), signed_b);
    const double rhs = outliers.cols() == 0 ? kInf : set_distance(outliers, signed_b);
    return !(lhs < rhs);
}

EquivalentConditionSample equivalent_condition_sample(const Dictionary& dict, Method method,
                                                      int num_samples, std::uint64_t seed,
                                                      int threads) {
    if (num_samples < 1) throw DomainError("equivalent_condition_sample: need at least one sample");
    if (!dict.has_partition())
        throw DomainError("equivalent_condition_sample: dictionary has no partition");

    const Matrix inliers = dict.inlier_matrix();
    const Matrix outliers = dict.outlier_matrix();
    if (inliers.cols() == 0) throw DomainError("equivalent_condition_sample: empty inlier set");
    const SubspaceBasis basis = subspace_basis(inliers);

    std::vector<char> violated(static_cast<size_t>(num_samples), 0);
    Matrix samples(dict.ambient_dim(), num_samples);
    const int resolved = detail::resolve_threads(threads);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(resolved) if (resolved > 1)
#endif
    for (int i = 0; i < num_samples; ++i) {
        Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(i));
        const Vector b = sample_unit_in_subspace(basis, rng);
        samples.col(i) = b;
        violated[static_cast<size_t>(i)] = equivalent_condition_violated(inliers, outliers, method, b);
    }
#ifndef _OPENMP
    (void)resolved;
#endif

    EquivalentConditionSample out;
    out.method = method;
    out.samples = num_samples;
    for (int i = 0; i < num_samples; ++i)
        if (violated[static_cast<size_t>(i)]) out.violating_samples.push_back(i);
    out.violations = static_cast<int>(out.violating_samples.size());
    out.witnesses.resize(dict.ambient_dim(), out.violations);
    for (int k = 0; k < out.violations; ++k)
        out.witnesses.col(k) = samples.col(out.violating_samples[static_cast<size_t>(k)]);
    return out;
}

}  // namespace subsparse
