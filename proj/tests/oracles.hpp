// Test-side oracles, independent of the library's implementation paths:
// planar geometry via angle arithmetic, l1 minimization via basic-solution
// enumeration. Used to pin expected values.
#pragma once

#include "subsparse/combinatorics.hpp"
#include "subsparse/types.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace subsparse::oracle {

inline constexpr double kPi = std::numbers::pi;

/// Planar atoms at the given angles, embedded in the span of two orthonormal
/// ambient directions.
inline Matrix planar_atoms(const std::vector<double>& angles, const Vector& u1, const Vector& u2) {
    Matrix atoms(u1.size(), static_cast<Eigen::Index>(angles.size()));
    for (size_t k = 0; k < angles.size(); ++k)
        atoms.col(static_cast<Eigen::Index>(k)) = std::cos(angles[k]) * u1 + std::sin(angles[k]) * u2;
    return atoms;
}

/// Covering radius of +/-atoms on the circle: half the largest angular gap of
/// the symmetrized, sorted angle list.
inline double angular_gap_covering_radius(std::vector<double> angles) {
    std::vector<double> all;
    for (double a : angles) {
        double x = std::fmod(a, 2 * kPi);
        if (x < 0) x += 2 * kPi;
        all.push_back(x);
        double y = x + kPi;
        if (y >= 2 * kPi) y -= 2 * kPi;
        all.push_back(y);
    }
    std::sort(all.begin(), all.end());
    double max_gap = 2 * kPi - all.back() + all.front();
    for (size_t i = 1; i < all.size(); ++i) max_gap = std::max(max_gap, all[i] - all[i - 1]);
    return max_gap / 2;
}

/// Vertices of {v in R^2 : |<a_k, v>| <= 1} for unit atoms at the given
/// angles: sort the symmetrized constraint normals by angle and intersect
/// adjacent lines, keeping feasible intersections.
inline std::vector<Eigen::Vector2d> polygon_polar_vertices(const std::vector<double>& angles,
                                                           double feas_tol = 1e-9) {
    std::vector<double> normals;
    for (double a : angles) {
        double x = std::fmod(a, 2 * kPi);
        if (x < 0) x += 2 * kPi;
        normals.push_back(x);
        double y = x + kPi;
        if (y >= 2 * kPi) y -= 2 * kPi;
        normals.push_back(y);
    }
    std::sort(normals.begin(), normals.end());

    std::vector<Eigen::Vector2d> vertices;
    const size_t n = normals.size();
    for (size_t k = 0; k < n; ++k) {
        const double a = normals[k];
        const double b = normals[(k + 1) % n];
        // intersect <(cos a, sin a), v> = 1 with <(cos b, sin b), v> = 1
        const double det = std::cos(a) * std::sin(b) - std::sin(a) * std::cos(b);
        if (std::abs(det) < 1e-12) continue;  // duplicate normal direction
        Eigen::Vector2d v((std::sin(b) - std::sin(a)) / det, (std::cos(a) - std::cos(b)) / det);
        bool feasible = true;
        for (double c : normals)
            if (std::cos(c) * v.x() + std::sin(c) * v.y() > 1 + feas_tol) {
                feasible = false;
                break;
            }
        if (!feasible) continue;
        bool duplicate = false;
        for (const auto& w : vertices)
            if ((w - v).norm() < 1e-8) {
                duplicate = true;
                break;
            }
        if (!duplicate) vertices.push_back(v);
    }
    return vertices;
}

/// Symmetric Hausdorff distance between two column sets.
inline double hausdorff(const Matrix& a, const Matrix& b) {
    if (a.cols() == 0 || b.cols() == 0)
        return a.cols() == b.cols() ? 0.0 : std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (int i = 0; i < a.cols(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (int j = 0; j < b.cols(); ++j) best = std::min(best, (a.col(i) - b.col(j)).norm());
        worst = std::max(worst, best);
    }
    for (int j = 0; j < b.cols(); ++j) {
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < a.cols(); ++i) best = std::min(best, (a.col(i) - b.col(j)).norm());
        worst = std::max(worst, best);
    }
    return worst;
}

/// Minimum l1 norm of solutions to A x = b by enumerating candidate supports
/// up to rank(A); +inf when infeasible. Exhaustive, for small instances only.
inline double l1_bruteforce(const Matrix& a, const Vector& b, double feas_tol = 1e-9) {
    const int cols = static_cast<int>(a.cols());
    const int rank = static_cast<int>(Eigen::ColPivHouseholderQR<Matrix>(a).rank());
    const double stop = feas_tol * std::max(1.0, b.norm());
    double best = std::numeric_limits<double>::infinity();
    if (b.norm() <= stop) return 0.0;
    for (int k = 1; k <= rank; ++k) {
        std::vector<int> idx = first_combination(k);
        do {
            Matrix sub(a.rows(), k);
            for (int c = 0; c < k; ++c) sub.col(c) = a.col(idx[static_cast<size_t>(c)]);
            const Vector x = sub.colPivHouseholderQr().solve(b);
            if ((sub * x - b).norm() <= stop) best = std::min(best, x.cwiseAbs().sum());
        } while (next_combination(idx, cols));
    }
    return best;
}

}  // namespace subsparse::oracle
