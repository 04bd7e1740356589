#include "subsparse/classifier.hpp"

#include "subsparse/random_model.hpp"
#include "subsparse/rng.hpp"
#include "subsparse/solvers.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>

namespace subsparse {

int UnionModel::total_points() const {
    int total = 0;
    for (const auto& group : groups) total += group.size();
    return total;
}

double UnionModel::proportion(int group) const {
    return static_cast<double>(groups[static_cast<size_t>(group)].size()) / total_points();
}

double UnionModel::k(int group) const {
    const int d = groups[static_cast<size_t>(group)].dim();
    return dictionary.ambient_dim() / (2.0 * d) - d;
}

UnionModel UnionModel::build(Dictionary dict, const DualPointOptions& options) {
    if (!dict.has_groups()) throw DomainError("UnionModel: dictionary has no group labeling");

    UnionModel model{std::move(dict), {}};
    for (const IndexSet& indices : model.dictionary.groups()) {
        if (indices.empty()) throw DomainError("UnionModel: empty group");
        GroupGeometry geometry;
        geometry.indices = indices;
        const Matrix atoms = model.dictionary.submatrix(indices);
        geometry.basis = subspace_basis(atoms);
        for (int j = 0; j < atoms.cols(); ++j)
            if (geometry.basis.residual_norm(atoms.col(j)) > tol::atom_norm * 10)
                throw DomainError("UnionModel: group atom strays from its subspace");
        geometry.duals = dual_points(atoms, geometry.basis, options);
        geometry.covering_radius =
            std::acos(std::clamp(1.0 / geometry.duals.max_norm(), -1.0, 1.0));
        model.groups.push_back(std::move(geometry));
    }
    return model;
}

Classification classify(const UnionModel& model, const Vector& query, Method method) {
    if (query.size() != model.dictionary.ambient_dim())
        throw DomainError("classify: query dimension mismatch");
    if (query.norm() == 0.0) throw DomainError("classify: zero query");

    Classification out;
    out.result = method == Method::bp ? bp_primal(model.dictionary.atoms(), query)
                                      : omp_solve(model.dictionary.atoms(), query);
    if (out.result.status != SolveStatus::converged) return out;
    out.ok = true;

    const int num_groups = static_cast<int>(model.groups.size());
    double best_mass = -1.0;
    for (int g = 0; g < num_groups; ++g) {
        double mass = 0.0;
        for (int j : model.groups[static_cast<size_t>(g)].indices)
            mass += std::abs(out.result.coefficients[j]);
        if (mass > best_mass) {
            best_mass = mass;
            out.label = g;
        }
    }

    for (int g = 0; g < num_groups && !out.single_group; ++g) {
        if (is_subspace_sparse(out.result, model.groups[static_cast<size_t>(g)].indices))
            out.single_group = true;
    }
    return out;
}

ClassificationConditionReport check_classification_condition(const UnionModel& model) {
    ClassificationConditionReport report;
    report.all_hold = true;
    const int num_groups = static_cast<int>(model.groups.size());
    for (int g = 0; g < num_groups; ++g) {
        const GroupGeometry& geometry = model.groups[static_cast<size_t>(g)];

        IndexSet others;
        for (int h = 0; h < num_groups; ++h) {
            if (h == g) continue;
            const auto& idx = model.groups[static_cast<size_t>(h)].indices;
            others.insert(others.end(), idx.begin(), idx.end());
        }

        GroupConditionReport entry;
        entry.covering_radius = geometry.covering_radius;
        entry.cross_distance =
            others.empty() ? std::numeric_limits<double>::infinity()
                           : set_distance(geometry.duals.points, model.dictionary.submatrix(others));
        entry.margin = entry.cross_distance - entry.covering_radius;
        entry.verdict = strict_verdict(entry.margin);
        entry.holds = entry.verdict == Verdict::holds;
        if (!entry.holds) report.all_hold = false;
        report.groups.push_back(entry);
    }
    return report;
}

double classification_probability_bound(int ambient_dim, const std::vector<int>& dims,
                                        const std::vector<int>& counts) {
    if (dims.empty() || dims.size() != counts.size())
        throw DomainError("classification_probability_bound: dims and counts must match");

    int total = 0;
    for (int s : counts) total += s;

    double sum = 0.0;
    for (size_t i = 0; i < dims.size(); ++i) {
        const int d = dims[i];
        const int s = counts[i];
        const double rho = static_cast<double>(s) / d;
        if (d < 2)
            throw DomainError("classification_probability_bound: group " + std::to_string(i) +
                              " requires dimension >= 2");
        if (2.0 * d * d >= ambient_dim)
            throw DomainError("classification_probability_bound: group " + std::to_string(i) +
                              " violates d_i < sqrt(D/2)");
        if (rho < 1.0)
            throw DomainError("classification_probability_bound: group " + std::to_string(i) +
                              " violates rho_i >= 1");
        const double c = c_constant(ambient_dim, d);
        const double proportion = static_cast<double>(s) / total;
        const double k = ambient_dim / (2.0 * d) - d;
        const double term1 = std::exp(std::log(static_cast<double>(d)) + d * std::log(2.0) -
                                      std::log(c) + 0.5 * std::log(rho) - c * std::sqrt(rho));
        const double term2 = std::exp(std::log(static_cast<double>(d)) +
                                      d * (std::log(2.0) + 1.0) - std::log(proportion) -
                                      k * std::log(rho));
        sum += term1 + term2;
    }
    return 1.0 - sum;
}

UnionModel sample_union_model(int ambient_dim, const std::vector<int>& dims,
                              const std::vector<int>& counts, std::uint64_t seed,
                              const DualPointOptions& options) {
    if (dims.empty() || dims.size() != counts.size())
        throw DomainError("sample_union_model: dims and counts must match");

    int total = 0;
    for (int s : counts) total += s;
    Matrix atoms(ambient_dim, total);
    std::vector<IndexSet> groups(dims.size());

    int column = 0;
    for (size_t g = 0; g < dims.size(); ++g) {
        const int d = dims[g];
        const int s = counts[g];
        if (d < 1 || d > ambient_dim || s < 1) throw DomainError("sample_union_model: bad group shape");

        Rng basis_rng = Rng::substream(seed, 1'000'000 + g);
        Matrix gaussian(ambient_dim, d);
        for (int j = 0; j < d; ++j) gaussian.col(j) = basis_rng.gaussian_vector(ambient_dim);
        const Eigen::HouseholderQR<Matrix> qr(gaussian);
        Matrix q = qr.householderQ() * Matrix::Identity(ambient_dim, d);
        const Matrix r = qr.matrixQR().topLeftCorner(d, d).triangularView<Eigen::Upper>();
        for (int j = 0; j < d; ++j)
            if (r(j, j) < 0.0) q.col(j) = -q.col(j);

        for (int i = 0; i < s; ++i) {
            Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(column));
            atoms.col(column) = q * rng.unit_vector(d);
            groups[g].push_back(column);
            ++column;
        }
    }

    return UnionModel::build(Dictionary(std::move(atoms), std::nullopt, std::move(groups)), options);
}

}  // namespace subsparse
