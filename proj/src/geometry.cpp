#include "subsparse/geometry.hpp"

#include "subsparse/rng.hpp"

#include <Eigen/SVD>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cmath>
#include <limits>

namespace subsparse {

namespace {
double clamped_acos(double c) { return std::acos(std::clamp(c, -1.0, 1.0)); }
}  // namespace

double spherical_distance(const Vector& v, const Vector& w) {
    if (v.size() != w.size()) throw DomainError("spherical_distance: dimension mismatch");
    const double nv = v.norm();
    const double nw = w.norm();
    if (nv == 0.0 || nw == 0.0) throw DomainError("spherical_distance: zero vector");
    return clamped_acos(v.dot(w) / (nv * nw));
}

double set_distance(const Matrix& v_set, const Matrix& w_set) {
    if (v_set.cols() == 0 || w_set.cols() == 0) throw DomainError("set_distance: empty set");
    if (v_set.rows() != w_set.rows()) throw DomainError("set_distance: dimension mismatch");
    Matrix vn = v_set;
    Matrix wn = w_set;
    for (int j = 0; j < vn.cols(); ++j) {
        const double n = vn.col(j).norm();
        if (n == 0.0) throw DomainError("set_distance: zero vector in first set");
        vn.col(j) /= n;
    }
    for (int j = 0; j < wn.cols(); ++j) {
        const double n = wn.col(j).norm();
        if (n == 0.0) throw DomainError("set_distance: zero vector in second set");
        wn.col(j) /= n;
    }
    // min angle over pairs = arccos of the max cosine
    const double max_cos = (vn.transpose() * wn).maxCoeff();
    return clamped_acos(max_cos);
}

Matrix symmetrized(const Matrix& atoms) {
    Matrix out(atoms.rows(), 2 * atoms.cols());
    out.leftCols(atoms.cols()) = atoms;
    out.rightCols(atoms.cols()) = -atoms;
    return out;
}

SubspaceBasis subspace_basis(const Matrix& atoms, double rank_tol) {
    if (atoms.cols() == 0) throw DomainError("subspace_basis: empty atom set");
    Eigen::BDCSVD<Matrix> svd(atoms, Eigen::ComputeThinU);
    const auto& sigma = svd.singularValues();
    const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
    if (!(sigma_max > 0.0)) throw DomainError("subspace_basis: atoms span the zero space");
    int rank = 0;
    for (int i = 0; i < sigma.size(); ++i)
        if (sigma(i) > rank_tol * sigma_max) ++rank;
    SubspaceBasis out;
    out.basis = svd.matrixU().leftCols(rank);
    out.rank_tolerance = rank_tol;
    return out;
}

namespace detail {

double candidate_count(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double binom = 1.0;
    for (int i = 1; i <= k; ++i) binom *= static_cast<double>(n - k + i) / static_cast<double>(i);
    return std::ldexp(binom, k);  // 2^k * binom(n, k)
}

namespace {

// One antipodal representative per feasible (subset, sign-pattern) solution,
// canonically oriented so the largest-magnitude coordinate is positive.
template <int K>
void scan_lead_fixed(const double* coords, int s0, int lead, double feas_tol,
                     double condition_limit, std::vector<double>& out) {
    if (lead + K > s0) return;
    int idx[K];
    for (int r = 0; r < K; ++r) idx[r] = lead + r;

    double m[K][K];
    int rowptr[K];
    double y[K];
    double v[K];

    while (true) {
        for (int r = 0; r < K; ++r) {
            const double* col = coords + static_cast<size_t>(idx[r]) * K;
            for (int c = 0; c < K; ++c) m[r][c] = col[c];
            rowptr[r] = r;
        }

        bool singular = false;
        double diag_max = 0.0;
        double diag_min = std::numeric_limits<double>::infinity();
        for (int k = 0; k < K; ++k) {
            int p = k;
            double best = std::abs(m[k][k]);
            for (int r = k + 1; r < K; ++r) {
                const double a = std::abs(m[r][k]);
                if (a > best) {
                    best = a;
                    p = r;
                }
            }
            if (p != k) {
                for (int c = 0; c < K; ++c) std::swap(m[k][c], m[p][c]);
                std::swap(rowptr[k], rowptr[p]);
            }
            const double piv = m[k][k];
            const double a = std::abs(piv);
            diag_max = std::max(diag_max, a);
            diag_min = std::min(diag_min, a);
            if (a == 0.0) {
                singular = true;
                break;
            }
            for (int r = k + 1; r < K; ++r) {
                const double f = m[r][k] / piv;
                m[r][k] = f;
                for (int c = k + 1; c < K; ++c) m[r][c] -= f * m[k][c];
            }
        }

        if (!singular && diag_max <= condition_limit * diag_min) {
            // sign patterns with u[0] fixed to +1; negations are emitted later
            for (unsigned pat = 0; pat < (1u << (K - 1)); ++pat) {
                for (int r = 0; r < K; ++r) {
                    const int src = rowptr[r];
                    double u = (src == 0) ? 1.0 : ((pat >> (src - 1)) & 1u ? -1.0 : 1.0);
                    for (int c = 0; c < r; ++c) u -= m[r][c] * y[c];
                    y[r] = u;
                }
                for (int r = K - 1; r >= 0; --r) {
                    double acc = y[r];
                    for (int c = r + 1; c < K; ++c) acc -= m[r][c] * v[c];
                    v[r] = acc / m[r][r];
                }

                int arg = 0;
                double mag = std::abs(v[0]);
                for (int r = 1; r < K; ++r) {
                    const double a = std::abs(v[r]);
                    if (a > mag) {
                        mag = a;
                        arg = r;
                    }
                }
                if (v[arg] < 0.0)
                    for (int r = 0; r < K; ++r) v[r] = -v[r];

                bool feasible = true;
                const double limit = 1.0 + feas_tol;
                for (int j = 0; j < s0; ++j) {
                    const double* col = coords + static_cast<size_t>(j) * K;
                    double dot = 0.0;
                    for (int c = 0; c < K; ++c) dot += col[c] * v[c];
                    if (std::abs(dot) > limit) {
                        feasible = false;
                        break;
                    }
                }
                if (feasible) out.insert(out.end(), v, v + K);
            }
        }

        if constexpr (K == 1) break;
        int r = K - 1;
        while (r >= 1 && idx[r] == s0 - K + r) --r;
        if (r == 0) break;
        ++idx[r];
        for (int t = r + 1; t < K; ++t) idx[t] = idx[t - 1] + 1;
    }
}

// Same scan for subspace dimensions beyond the fixed-size instantiations.
void scan_lead_dynamic(const Matrix& coords, int lead, double feas_tol,
                       double condition_limit, std::vector<double>& out) {
    const int d0 = static_cast<int>(coords.rows());
    const int s0 = static_cast<int>(coords.cols());
    if (lead + d0 > s0) return;
    std::vector<int> idx(d0);
    for (int r = 0; r < d0; ++r) idx[r] = lead + r;

    Matrix msub(d0, d0);
    Vector u(d0), v(d0);
    while (true) {
        for (int r = 0; r < d0; ++r) msub.row(r) = coords.col(idx[r]).transpose();
        Eigen::PartialPivLU<Matrix> lu(msub);
        const Vector diag = lu.matrixLU().diagonal().cwiseAbs();
        const double diag_max = diag.maxCoeff();
        const double diag_min = diag.minCoeff();
        if (diag_min > 0.0 && diag_max <= condition_limit * diag_min) {
            const std::uint64_t patterns = 1ull << (d0 - 1);
            for (std::uint64_t pat = 0; pat < patterns; ++pat) {
                u[0] = 1.0;
                for (int r = 1; r < d0; ++r) u[r] = (pat >> (r - 1)) & 1ull ? -1.0 : 1.0;
                v = lu.solve(u);
                int arg;
                v.cwiseAbs().maxCoeff(&arg);
                if (v[arg] < 0.0) v = -v;
                if ((coords.transpose() * v).cwiseAbs().maxCoeff() <= 1.0 + feas_tol)
                    out.insert(out.end(), v.data(), v.data() + d0);
            }
        }
        int r = d0 - 1;
        while (r >= 1 && idx[r] == s0 - d0 + r) --r;
        if (r == 0) break;
        ++idx[r];
        for (int t = r + 1; t < d0; ++t) idx[t] = idx[t - 1] + 1;
    }
}

void scan_lead(const Matrix& coords, int lead, double feas_tol, double condition_limit,
               std::vector<double>& out) {
    const double* data = coords.data();
    const int s0 = static_cast<int>(coords.cols());
    switch (coords.rows()) {
        case 1: scan_lead_fixed<1>(data, s0, lead, feas_tol, condition_limit, out); break;
        case 2: scan_lead_fixed<2>(data, s0, lead, feas_tol, condition_limit, out); break;
        case 3: scan_lead_fixed<3>(data, s0, lead, feas_tol, condition_limit, out); break;
        case 4: scan_lead_fixed<4>(data, s0, lead, feas_tol, condition_limit, out); break;
        case 5: scan_lead_fixed<5>(data, s0, lead, feas_tol, condition_limit, out); break;
        case 6: scan_lead_fixed<6>(data, s0, lead, feas_tol, condition_limit, out); break;
        case 7: scan_lead_fixed<7>(data, s0, lead, feas_tol, condition_limit, out); break;
        case 8: scan_lead_fixed<8>(data, s0, lead, feas_tol, condition_limit, out); break;
        default: scan_lead_dynamic(coords, lead, feas_tol, condition_limit, out); break;
    }
}

// Lexicographic sort, then distance-based dedupe. The sort makes the result
// independent of production order (the serial/parallel contract).
std::vector<double> sort_and_dedupe(std::vector<double> flat, int dim, double dedupe_tol) {
    const size_t count = flat.size() / static_cast<size_t>(dim);
    std::vector<const double*> ptrs(count);
    for (size_t i = 0; i < count; ++i) ptrs[i] = flat.data() + i * static_cast<size_t>(dim);
    std::sort(ptrs.begin(), ptrs.end(), [dim](const double* a, const double* b) {
        return std::lexicographical_compare(a, a + dim, b, b + dim);
    });

    std::vector<double> kept;
    kept.reserve(flat.size());
    const double tol2 = dedupe_tol * dedupe_tol;
    for (const double* cand : ptrs) {
        bool duplicate = false;
        for (size_t j = kept.size(); j >= static_cast<size_t>(dim); j -= static_cast<size_t>(dim)) {
            const double* prev = kept.data() + j - static_cast<size_t>(dim);
            if (cand[0] - prev[0] > dedupe_tol) break;  // kept is sorted on coordinate 0
            double dist2 = 0.0;
            for (int c = 0; c < dim; ++c) {
                const double d = cand[c] - prev[c];
                dist2 += d * d;
            }
            if (dist2 < tol2) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) kept.insert(kept.end(), cand, cand + dim);
    }
    return kept;
}

}  // namespace

std::vector<double> enumerate_polar_vertices(const Matrix& coords, double feas_tol,
                                             double dedupe_tol, double condition_limit,
                                             bool parallel, int threads) {
    const int d0 = static_cast<int>(coords.rows());
    const int s0 = static_cast<int>(coords.cols());
    const int num_leads = s0 - d0 + 1;
    if (num_leads <= 0) throw DomainError("enumerate_polar_vertices: fewer atoms than dimensions");

    std::vector<double> flat;
#ifdef _OPENMP
    if (parallel && threads > 1) {
        std::vector<std::vector<double>> buffers(static_cast<size_t>(threads));
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (int lead = 0; lead < num_leads; ++lead) {
            auto& buf = buffers[static_cast<size_t>(omp_get_thread_num())];
            scan_lead(coords, lead, feas_tol, condition_limit, buf);
        }
        for (auto& buf : buffers) flat.insert(flat.end(), buf.begin(), buf.end());
    } else
#else
    (void)parallel;
    (void)threads;
#endif
    {
        for (int lead = 0; lead < num_leads; ++lead)
            scan_lead(coords, lead, feas_tol, condition_limit, flat);
    }
    return sort_and_dedupe(std::move(flat), d0, dedupe_tol);
}

}  // namespace detail

DualPointSet dual_points(const Matrix& atoms, const SubspaceBasis& basis,
                         const DualPointOptions& options) {
    const int d0 = basis.rank();
    const int s0 = static_cast<int>(atoms.cols());
    if (d0 < 1) throw DomainError("dual_points: basis rank must be at least 1");
    if (atoms.rows() != basis.basis.rows()) throw DomainError("dual_points: dimension mismatch");
    for (int j = 0; j < s0; ++j) {
        const double r = basis.residual_norm(atoms.col(j));
        if (r > options.feas_tol * std::max(1.0, atoms.col(j).norm()))
            throw DomainError("dual_points: atom " + std::to_string(j) + " lies outside span(basis)");
    }

    const double candidates = detail::candidate_count(s0, d0);
    if (candidates > static_cast<double>(options.budget))
        throw ResourceError("dual_points: candidate count " + std::to_string(candidates) +
                            " exceeds budget cap " + std::to_string(options.budget));

    const Matrix coords = basis.basis.transpose() * atoms;
    const int threads = detail::resolve_threads(options.threads);
    const std::vector<double> reps = detail::enumerate_polar_vertices(
        coords, options.feas_tol, options.dedupe_tol, options.condition_limit, threads > 1, threads);

    const int num_reps = static_cast<int>(reps.size()) / d0;
    DualPointSet out;
    out.generating_basis = basis;
    out.dedupe_tolerance = options.dedupe_tol;
    out.points.resize(atoms.rows(), 2 * num_reps);
    for (int i = 0; i < num_reps; ++i) {
        const Eigen::Map<const Vector> v(reps.data() + static_cast<size_t>(i) * d0, d0);
        out.points.col(2 * i) = basis.basis * v;
        out.points.col(2 * i + 1) = -out.points.col(2 * i);
    }
    return out;
}

double covering_radius_exact(const Matrix& atoms, const SubspaceBasis& basis,
                             const DualPointOptions& options) {
    const DualPointSet duals = dual_points(atoms, basis, options);
    if (duals.count() == 0) throw SolverError("covering_radius_exact: vertex enumeration found no dual points");
    return clamped_acos(1.0 / duals.max_norm());
}

double covering_radius_sampled(const Matrix& atoms, const SubspaceBasis& basis,
                               int num_samples, std::uint64_t seed, int threads) {
    if (num_samples < 1) throw DomainError("covering_radius_sampled: need at least one sample");
    const Matrix coords = basis.basis.transpose() * atoms;
    const int d0 = basis.rank();
    const int resolved = detail::resolve_threads(threads);

    double max_angle = 0.0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(resolved) reduction(max : max_angle) \
    if (resolved > 1)
#endif
    for (int i = 0; i < num_samples; ++i) {
        Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(i));
        const Vector w = rng.unit_vector(d0);
        const double nearest_cos = (coords.transpose() * w).cwiseAbs().maxCoeff();
        const double angle = clamped_acos(nearest_cos);
        max_angle = std::max(max_angle, angle);
    }
#ifndef _OPENMP
    (void)resolved;
#endif
    return max_angle;
}

double minkowski_gauge(const Matrix& atoms, const SubspaceBasis& basis, const Vector& b) {
    if (b.size() != atoms.rows()) throw DomainError("minkowski_gauge: dimension mismatch");
    if (basis.residual_norm(b) > tol::feas * std::max(1.0, b.norm()))
        throw DomainError("minkowski_gauge: point lies outside span(basis)");
    return (atoms.transpose() * b).cwiseAbs().maxCoeff();
}

double mutual_coherence(const Matrix& atoms) {
    const int n = static_cast<int>(atoms.cols());
    if (n < 2) return 0.0;
    double mu = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            mu = std::max(mu, std::abs(atoms.col(i).dot(atoms.col(j))));
    return mu;
}

}  // namespace subsparse
