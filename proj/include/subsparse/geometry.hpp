#pragma once

#include "subsparse/types.hpp"

#include <cstdint>

namespace subsparse {

/// Angle in [0, pi] between two nonzero vectors.
double spherical_distance(const Vector& v, const Vector& w);

/// Minimum spherical distance over all column pairs of two nonempty sets.
double set_distance(const Matrix& v_set, const Matrix& w_set);

/// Columns of `atoms` together with their negations.
Matrix symmetrized(const Matrix& atoms);

/// Orthonormal basis of the numerical column span; rank counts singular values
/// above rank_tol times the largest one.
SubspaceBasis subspace_basis(const Matrix& atoms, double rank_tol = tol::rank);

struct DualPointOptions {
    double feas_tol = tol::feas;
    double dedupe_tol = tol::dedupe;
    std::uint64_t budget = 2'000'000;   // cap on 2^d0 * binom(s0, d0)
    double condition_limit = 1e12;      // subset systems beyond this are skipped
    int threads = 0;                    // 0: SUBSPARSE_THREADS env or serial
};

/// Enumerates the vertices of the polar body K0° of conv(±A0) relative to
/// span(A0), by solving every (d0-subset, sign-pattern) system and keeping the
/// feasible, deduplicated solutions. Output is closed under negation and
/// deterministic regardless of thread count.
DualPointSet dual_points(const Matrix& atoms, const SubspaceBasis& basis,
                         const DualPointOptions& options = {});

/// Covering radius of ±atoms on the unit sphere of span(atoms), exactly:
/// arccos(1 / max{||v|| : v dual point}).
double covering_radius_exact(const Matrix& atoms, const SubspaceBasis& basis,
                             const DualPointOptions& options = {});

/// Max over `num_samples` uniform directions w in the subspace of the angle to
/// the nearest of ±atoms. A lower bound on the exact covering radius.
double covering_radius_sampled(const Matrix& atoms, const SubspaceBasis& basis,
                               int num_samples, std::uint64_t seed, int threads = 0);

/// Minkowski gauge of the polar body K0° at b (which must lie in the span):
/// equals ||A0^T b||_inf.
double minkowski_gauge(const Matrix& atoms, const SubspaceBasis& basis, const Vector& b);

/// Largest absolute inner product between distinct columns; 0 for a single atom.
double mutual_coherence(const Matrix& atoms);

namespace detail {
/// Candidate count 2^k * binom(n, k) saturated at +inf, for budget checks.
double candidate_count(int n, int k);

/// Vertex enumeration in subspace coordinates (d0 x s0 matrix of atom
/// coordinates). Returns deduplicated canonical representatives, one per
/// antipodal vertex pair, sorted lexicographically; flat row-major storage.
/// `parallel` selects the OpenMP path; both paths return identical output.
std::vector<double> enumerate_polar_vertices(const Matrix& coords, double feas_tol,
                                             double dedupe_tol, double condition_limit,
                                             bool parallel, int threads);
}  // namespace detail

}  // namespace subsparse
