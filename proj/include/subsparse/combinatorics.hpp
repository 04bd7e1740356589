#pragma once

#include <vector>

namespace subsparse {

/// {0, 1, ..., k-1}, the lexicographically first k-subset.
inline std::vector<int> first_combination(int k) {
    std::vector<int> idx(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<size_t>(i)] = i;
    return idx;
}

/// Advances to the next k-subset of {0..n-1} in lexicographic order.
inline bool next_combination(std::vector<int>& idx, int n) {
    const int k = static_cast<int>(idx.size());
    int r = k - 1;
    while (r >= 0 && idx[static_cast<size_t>(r)] == n - k + r) --r;
    if (r < 0) return false;
    ++idx[static_cast<size_t>(r)];
    for (int t = r + 1; t < k; ++t) idx[static_cast<size_t>(t)] = idx[static_cast<size_t>(t - 1)] + 1;
    return true;
}

/// binom(n, k) in floating point (saturates instead of overflowing).
inline double combination_count(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double out = 1.0;
    for (int i = 1; i <= k; ++i) out *= static_cast<double>(n - k + i) / static_cast<double>(i);
    return out;
}

}  // namespace subsparse
