#include "subsparse/types.hpp"

#include <algorithm>
#include <cstdlib>

namespace subsparse {

namespace {

void check_index_cover(const std::vector<IndexSet>& sets, int num_atoms, const char* what) {
    std::vector<char> seen(static_cast<size_t>(num_atoms), 0);
    for (const auto& set : sets) {
        for (int j : set) {
            if (j < 0 || j >= num_atoms)
                throw DomainError(std::string(what) + ": index " + std::to_string(j) + " out of range");
            if (seen[static_cast<size_t>(j)])
                throw DomainError(std::string(what) + ": index " + std::to_string(j) + " appears twice");
            seen[static_cast<size_t>(j)] = 1;
        }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
        throw DomainError(std::string(what) + ": index sets do not cover all atoms");
}

}  // namespace

Dictionary::Dictionary(Matrix atoms, std::optional<Partition> partition,
                       std::optional<std::vector<IndexSet>> groups)
    : atoms_(std::move(atoms)), partition_(std::move(partition)), groups_(std::move(groups)) {
    if (atoms_.rows() < 1 || atoms_.cols() < 1)
        throw DomainError("Dictionary: needs at least one atom in at least one dimension");
    for (int j = 0; j < atoms_.cols(); ++j) {
        const double norm = atoms_.col(j).norm();
        if (std::abs(norm - 1.0) > tol::atom_norm)
            throw DomainError("Dictionary: atom " + std::to_string(j) + " has norm " +
                              std::to_string(norm) + ", expected unit norm");
    }
    if (partition_)
        check_index_cover({partition_->inliers, partition_->outliers}, num_atoms(), "partition");
    if (groups_)
        check_index_cover(*groups_, num_atoms(), "groups");
}

const Partition& Dictionary::partition() const {
    if (!partition_) throw DomainError("Dictionary: no partition present");
    return *partition_;
}

const std::vector<IndexSet>& Dictionary::groups() const {
    if (!groups_) throw DomainError("Dictionary: no group labeling present");
    return *groups_;
}

Matrix Dictionary::submatrix(const IndexSet& indices) const {
    Matrix out(atoms_.rows(), static_cast<Eigen::Index>(indices.size()));
    for (size_t k = 0; k < indices.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = atoms_.col(indices[k]);
    return out;
}

std::string to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::converged: return "converged";
        case SolveStatus::infeasible: return "infeasible";
        case SolveStatus::budget_exceeded: return "budget_exceeded";
    }
    return "unknown";
}

IndexSet thresholded_support(const Vector& x, double threshold) {
    IndexSet support;
    for (int j = 0; j < x.size(); ++j)
        if (std::abs(x[j]) > threshold) support.push_back(j);
    return support;
}

namespace detail {

int resolve_threads(int requested) {
    int env_cap = 0;
    if (const char* env = std::getenv("SUBSPARSE_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) env_cap = n;
    }
    if (requested > 0) return env_cap > 0 ? std::min(requested, env_cap) : requested;
    return env_cap > 0 ? env_cap : 1;
}

}  // namespace detail

}  // namespace subsparse
