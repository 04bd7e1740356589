#include "subsparse/random_model.hpp"

#include "subsparse/rng.hpp"

#include <Eigen/QR>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace subsparse {

namespace {
constexpr double kPi = std::numbers::pi;

double pow_int(double base, int exponent) { return std::pow(base, static_cast<double>(exponent)); }

// integral of sin^k over [a, b] by adaptive Simpson
double simpson_slice(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(int k, double a, double b, double fa, double fm, double fb, double whole,
                        double tolerance, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = pow_int(std::sin(lm), k);
    const double frm = pow_int(std::sin(rm), k);
    const double left = simpson_slice(a, m, fa, flm, fm);
    const double right = simpson_slice(m, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tolerance)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(k, a, m, fa, flm, fm, left, 0.5 * tolerance, depth - 1) +
           adaptive_simpson(k, m, b, fm, frm, fb, right, 0.5 * tolerance, depth - 1);
}

double integrate_sin_power(int k, double a, double b, double tolerance) {
    if (b <= a) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = pow_int(std::sin(a), k);
    const double fm = pow_int(std::sin(m), k);
    const double fb = pow_int(std::sin(b), k);
    const double whole = simpson_slice(a, b, fa, fm, fb);
    return adaptive_simpson(k, a, b, fa, fm, fb, whole, tolerance, 48);
}

double volume_ratio(int p) {  // v_{p-1} / v_p
    return std::exp(log_unit_ball_volume(p - 1) - log_unit_ball_volume(p));
}

}  // namespace

double log_unit_ball_volume(int p) {
    if (p < 0) throw DomainError("log_unit_ball_volume: dimension must be nonnegative");
    return 0.5 * p * std::log(kPi) - std::lgamma(0.5 * p + 1.0);
}

double unit_ball_volume(int p) {
    if (p < 1) throw DomainError("unit_ball_volume: dimension must be at least 1");
    return std::exp(log_unit_ball_volume(p));
}

std::pair<double, double> cap_area_fraction_bounds(int p, double theta) {
    if (p < 2) throw DomainError("cap_area_fraction_bounds: p must be at least 2");
    if (theta < 0.0 || theta > kPi / 2)
        throw DomainError("cap_area_fraction_bounds: theta must lie in [0, pi/2]");
    const double ratio = volume_ratio(p);
    const double s = pow_int(std::sin(theta), p - 1);
    return {ratio / p * s, ratio * s};
}

double cap_area_fraction_numeric(int p, double theta) {
    if (p < 2) throw DomainError("cap_area_fraction_numeric: p must be at least 2");
    if (theta < 0.0 || theta > kPi)
        throw DomainError("cap_area_fraction_numeric: theta must lie in [0, pi]");
    const double numerator = integrate_sin_power(p - 2, 0.0, theta, 1e-12);
    const double denominator = integrate_sin_power(p - 2, 0.0, kPi, 1e-12);
    return numerator / denominator;
}

double covering_number_bound(int p, double eps) {
    if (p < 2) throw DomainError("covering_number_bound: p must be at least 2");
    if (!(eps > 0.0) || eps > kPi / 4)
        throw DomainError("covering_number_bound: eps must lie in (0, pi/4]");
    return p / (volume_ratio(p) * pow_int(std::sin(eps / 2), p - 1));
}

double covering_radius_tail_bound(int p, int num_points, double gamma_star) {
    if (p < 2) throw DomainError("covering_radius_tail_bound: p must be at least 2");
    if (num_points < 1) throw DomainError("covering_radius_tail_bound: need at least one point");
    if (!(gamma_star > 0.0) || gamma_star > kPi / 2)
        throw DomainError("covering_radius_tail_bound: gamma_star must lie in (0, pi/2]");
    const double ratio = volume_ratio(p);
    const double log_prefactor =
        std::log(static_cast<double>(p)) - std::log(ratio) -
        (p - 1) * std::log(std::sin(gamma_star / 4));
    const double exponent =
        num_points * (2.0 * ratio / p) * pow_int(std::sin(gamma_star / 2), p - 1);
    return 1.0 - std::exp(log_prefactor - exponent);
}

double c_constant(int ambient_dim, int subspace_dim) {
    if (ambient_dim < 2) throw DomainError("c_constant: ambient dimension must be at least 2");
    if (subspace_dim < 2) throw DomainError("c_constant: subspace dimension must be at least 2");
    const double log_c =
        -(subspace_dim - 2) * std::log(2.0) + log_unit_ball_volume(subspace_dim - 1) -
        log_unit_ball_volume(subspace_dim) +
        static_cast<double>(subspace_dim - 1) / (ambient_dim - 1) *
            (log_unit_ball_volume(ambient_dim) - log_unit_ball_volume(ambient_dim - 1));
    return std::exp(log_c);
}

double drc_probability_bound(int ambient_dim, int subspace_dim, double density,
                             double outlier_ratio) {
    if (subspace_dim < 2)
        throw DomainError("drc_probability_bound: requires subspace dimension >= 2");
    if (2.0 * subspace_dim * subspace_dim >= ambient_dim)
        throw DomainError("drc_probability_bound: requires d0 < sqrt(D/2)");
    if (density < 1.0) throw DomainError("drc_probability_bound: requires density >= 1");
    if (outlier_ratio < 0.0)
        throw DomainError("drc_probability_bound: outlier ratio must be nonnegative");

    const double c = c_constant(ambient_dim, subspace_dim);
    const double sqrt_density = std::sqrt(density);
    const double log_term1 = std::log(static_cast<double>(subspace_dim)) +
                             subspace_dim * std::log(2.0) - std::log(c) +
                             0.5 * std::log(density) - c * sqrt_density;
    const double k0 = ambient_dim / (2.0 * subspace_dim) - subspace_dim;
    double term2 = 0.0;
    if (outlier_ratio > 0.0)
        term2 = std::exp(std::log(outlier_ratio) + std::log(static_cast<double>(subspace_dim)) +
                         subspace_dim * (std::log(2.0) + 1.0) - k0 * std::log(density));
    return 1.0 - std::exp(log_term1) - term2;
}

double drc_probability_bound(const RandomModelParams& params) {
    return drc_probability_bound(params.ambient_dim, params.subspace_dim, params.density(),
                                 params.outlier_ratio);
}

Dictionary sample_instance(const RandomModelParams& params, std::uint64_t seed) {
    const int dim = params.ambient_dim;
    const int d0 = params.subspace_dim;
    const int s0 = params.num_inliers;
    if (dim < 1 || d0 < 1 || d0 > dim || s0 < 1 || params.outlier_ratio < 0.0)
        throw DomainError("sample_instance: invalid model parameters");

    Rng basis_rng = Rng::substream(seed, 0);
    Matrix gaussian(dim, d0);
    for (int j = 0; j < d0; ++j) gaussian.col(j) = basis_rng.gaussian_vector(dim);
    const Eigen::HouseholderQR<Matrix> qr(gaussian);
    Matrix q = qr.householderQ() * Matrix::Identity(dim, d0);
    const Matrix r = qr.matrixQR().topLeftCorner(d0, d0).triangularView<Eigen::Upper>();
    for (int j = 0; j < d0; ++j)
        if (r(j, j) < 0.0) q.col(j) = -q.col(j);

    const int outliers = params.num_outliers();
    Matrix atoms(dim, s0 + outliers);
    for (int i = 0; i < s0; ++i) {
        Rng rng = Rng::substream(seed, 1 + static_cast<std::uint64_t>(i));
        atoms.col(i) = q * rng.unit_vector(d0);
    }
    for (int i = 0; i < outliers; ++i) {
        Rng rng = Rng::substream(seed, 1 + static_cast<std::uint64_t>(s0 + i));
        atoms.col(s0 + i) = rng.unit_vector(dim);
    }

    Partition partition;
    for (int i = 0; i < s0; ++i) partition.inliers.push_back(i);
    for (int i = 0; i < outliers; ++i) partition.outliers.push_back(s0 + i);
    return Dictionary(std::move(atoms), std::move(partition));
}

MonteCarloReport monte_carlo_drc(const RandomModelParams& params, int trials,
                                 std::uint64_t master_seed, const MonteCarloOptions& options) {
    if (trials < 1) throw DomainError("monte_carlo_drc: need at least one trial");

    MonteCarloReport report;
    report.params = params;
    report.trials = trials;
    report.master_seed = master_seed;
    if (params.subspace_dim == 1) {
        report.theoretical_lower_bound = 1.0;  // one-dimensional case holds surely
    } else if (params.subspace_dim >= 2 &&
               2.0 * params.subspace_dim * params.subspace_dim < params.ambient_dim &&
               params.density() >= 1.0) {
        report.theoretical_lower_bound = drc_probability_bound(params);
    } else {
        report.theoretical_lower_bound = std::numeric_limits<double>::quiet_NaN();
    }

    report.records.resize(static_cast<size_t>(trials));
    const int threads = detail::resolve_threads(options.threads);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads) if (threads > 1)
#endif
    for (int t = 0; t < trials; ++t) {
        TrialRecord& record = report.records[static_cast<size_t>(t)];
        record.trial = t;
        record.seed = substream_seed(master_seed, static_cast<std::uint64_t>(t));
        const Dictionary dict = sample_instance(params, record.seed);
        try {
            const ConditionReport cond = analyze_conditions(dict, options.dual_points);
            record.gamma0 = cond.gamma0;
            record.dist_ac_d0 = cond.dist_ac_d0;
            record.drc = cond.drc_holds;
        } catch (const ResourceError&) {
            record.resource_error = true;
            record.gamma0 = std::numeric_limits<double>::quiet_NaN();
            record.dist_ac_d0 = std::numeric_limits<double>::quiet_NaN();
        }
    }
#ifndef _OPENMP
    (void)threads;
#endif

    for (const TrialRecord& record : report.records) {
        if (record.resource_error)
            ++report.resource_failures;
        else if (record.drc)
            ++report.successes;
    }
    report.empirical_frequency = static_cast<double>(report.successes) / trials;
    return report;
}

}  // namespace subsparse
