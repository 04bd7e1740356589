#pragma once

#include "subsparse/conditions.hpp"
#include "subsparse/geometry.hpp"
#include "subsparse/types.hpp"

#include <cstdint>

namespace subsparse {

/// Parameters of the uniform random dictionary model: s0 inliers on the unit
/// sphere of a Haar-random d0-dimensional subspace of R^D and
/// ceil(lambda * s0) outliers on the ambient unit sphere.
struct RandomModelParams {
    int ambient_dim = 0;        // D
    int subspace_dim = 0;       // d0
    int num_inliers = 0;        // s0
    double outlier_ratio = 0.0;  // lambda

    double density() const { return static_cast<double>(num_inliers) / subspace_dim; }
    int num_outliers() const {
        return static_cast<int>(std::ceil(outlier_ratio * num_inliers));
    }
    double k0() const { return ambient_dim / (2.0 * subspace_dim) - subspace_dim; }
};

/// log of v_p = pi^{p/2} / Gamma(p/2 + 1); defined for p >= 0.
double log_unit_ball_volume(int p);

/// Volume of the unit ball in R^p.
double unit_ball_volume(int p);

/// Lower and upper bounds on the area fraction of a spherical cap of angular
/// radius theta on S^{p-1}:  (v_{p-1}/(p v_p)) sin^{p-1} theta  and
/// (v_{p-1}/v_p) sin^{p-1} theta.
std::pair<double, double> cap_area_fraction_bounds(int p, double theta);

/// Cap area fraction by adaptive quadrature of sin^{p-2} (absolute error
/// <= 1e-10); serves as the independent oracle for the closed-form bounds.
double cap_area_fraction_numeric(int p, double theta);

/// Upper bound on the covering number of S^{p-1} at radius eps <= pi/4.
double covering_number_bound(int p, double eps);

/// Lower bound on P(covering radius of +/-K uniform points < gamma_star).
double covering_radius_tail_bound(int p, int num_points, double gamma_star);

/// C(D, d) = 2^{-(d-2)} (v_{d-1}/v_d) (v_D/v_{D-1})^{(d-1)/(D-1)}.
double c_constant(int ambient_dim, int subspace_dim);

/// Closed-form lower bound on the probability that the random model satisfies
/// the DRC. Requires 2 <= d0 < sqrt(D/2) and rho0 >= 1; the raw value is
/// returned even when vacuous (<= 0).
double drc_probability_bound(int ambient_dim, int subspace_dim, double density,
                             double outlier_ratio);
double drc_probability_bound(const RandomModelParams& params);

/// Draws one dictionary from the model; deterministic in the seed.
Dictionary sample_instance(const RandomModelParams& params, std::uint64_t seed);

struct TrialRecord {
    int trial = 0;
    std::uint64_t seed = 0;
    double gamma0 = 0.0;
    double dist_ac_d0 = 0.0;
    bool drc = false;
    bool resource_error = false;
};

struct MonteCarloReport {
    RandomModelParams params;
    int trials = 0;
    int successes = 0;
    int resource_failures = 0;
    double empirical_frequency = 0.0;      // successes / trials
    double theoretical_lower_bound = 0.0;  // closed-form bound; 1.0 when d0 == 1
    std::uint64_t master_seed = 0;
    std::vector<TrialRecord> records;
};

struct MonteCarloOptions {
    DualPointOptions dual_points{.budget = 100'000'000, .threads = 1};
    int threads = 0;  // trial-level parallelism; the report is thread-count invariant
};

/// Samples `trials` dictionaries, certifies the DRC on each, and compares the
/// empirical frequency with the closed-form bound. Budget overruns in the
/// vertex enumeration are counted as trial failures, not thrown.
MonteCarloReport monte_carlo_drc(const RandomModelParams& params, int trials,
                                 std::uint64_t master_seed, const MonteCarloOptions& options = {});

}  // namespace subsparse
