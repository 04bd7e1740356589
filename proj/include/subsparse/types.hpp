#pragma once

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace subsparse {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using IndexSet = std::vector<int>;

/// Invalid input or violated precondition.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Combinatorial budget exceeded; the message names the cap.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical failure (e.g. the LP solver stalled beyond recovery).
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace tol {
inline constexpr double atom_norm = 1e-10;      // unit-norm check on atoms
inline constexpr double load_norm = 1e-6;       // re-normalization window on load
inline constexpr double ortho = 1e-10;          // orthonormality of bases
inline constexpr double rank = 1e-10;           // relative rank tolerance
inline constexpr double feas = 1e-9;            // relative feasibility of residuals / polar membership
inline constexpr double support = 1e-8;         // coefficient threshold defining the support
inline constexpr double dedupe = 1e-8;          // vertex deduplication distance
inline constexpr double tie = 1e-12;            // OMP atom-selection tie window
inline constexpr double strict = 1e-9;          // margin certifying a strict inequality
inline constexpr double duality_gap = 1e-6;     // |primal - dual| allowed by strong duality
}  // namespace tol

struct Partition {
    IndexSet inliers;   // J0
    IndexSet outliers;  // Jc
};

/// A dictionary of unit-norm atoms (columns), optionally partitioned into
/// inliers/outliers or labeled by disjoint covering groups.
class Dictionary {
public:
    Dictionary(Matrix atoms, std::optional<Partition> partition = std::nullopt,
               std::optional<std::vector<IndexSet>> groups = std::nullopt);

    int ambient_dim() const { return static_cast<int>(atoms_.rows()); }
    int num_atoms() const { return static_cast<int>(atoms_.cols()); }

    const Matrix& atoms() const { return atoms_; }
    Vector atom(int j) const { return atoms_.col(j); }

    bool has_partition() const { return partition_.has_value(); }
    const Partition& partition() const;
    bool has_groups() const { return groups_.has_value(); }
    const std::vector<IndexSet>& groups() const;

    /// Columns selected by an index set, in the given order.
    Matrix submatrix(const IndexSet& indices) const;
    Matrix inlier_matrix() const { return submatrix(partition().inliers); }
    Matrix outlier_matrix() const { return submatrix(partition().outliers); }

private:
    Matrix atoms_;
    std::optional<Partition> partition_;
    std::optional<std::vector<IndexSet>> groups_;
};

/// Orthonormal basis of the numerical column span of an atom set.
struct SubspaceBasis {
    Matrix basis;  // ambient_dim x rank, orthonormal columns
    double rank_tolerance = tol::rank;

    int ambient_dim() const { return static_cast<int>(basis.rows()); }
    int rank() const { return static_cast<int>(basis.cols()); }

    /// Coordinates of v in the basis (the orthogonal projection's coefficients).
    Vector coordinates(const Vector& v) const { return basis.transpose() * v; }
    /// Map subspace coordinates back to the ambient space.
    Vector lift(const Vector& coords) const { return basis * coords; }
    /// Norm of the component of v orthogonal to the subspace.
    double residual_norm(const Vector& v) const { return (v - basis * (basis.transpose() * v)).norm(); }
};

/// The vertex set of the polar body K0° = {v in S0 : ||A0^T v||_inf <= 1},
/// stored in ambient coordinates and closed under negation.
struct DualPointSet {
    Matrix points;  // ambient_dim x count
    SubspaceBasis generating_basis;
    double dedupe_tolerance = tol::dedupe;

    int count() const { return static_cast<int>(points.cols()); }
    double max_norm() const { return points.size() == 0 ? 0.0 : points.colwise().norm().maxCoeff(); }
};

enum class SolveStatus { converged, infeasible, budget_exceeded };

std::string to_string(SolveStatus status);

/// Output of a sparse solver: coefficients, thresholded support and diagnostics.
struct RecoveryResult {
    Vector coefficients;
    IndexSet support;       // { j : |x_j| > eps_support }, ascending
    double residual_norm = 0.0;
    double objective = 0.0;  // ||x||_1 for BP, support size for OMP / l0
    int iterations = 0;
    SolveStatus status = SolveStatus::converged;
};

enum class Method { bp, omp };

/// Indices with |x_j| > threshold, ascending.
IndexSet thresholded_support(const Vector& x, double threshold = tol::support);

namespace detail {
/// Resolves a requested thread count: explicit value > 0 wins, otherwise the
/// SUBSPARSE_THREADS environment variable, otherwise 1 (serial).
int resolve_threads(int requested);
}  // namespace detail

}  // namespace subsparse
