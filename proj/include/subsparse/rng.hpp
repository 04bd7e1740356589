#pragma once

#include "subsparse/types.hpp"

#include <cstdint>
#include <random>

namespace subsparse {

/// SplitMix64 finalizer; used to derive independent substream seeds so that
/// parallel workers produce the same draws regardless of execution order.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for substream `id` of the stream rooted at `master`.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t id) {
    return mix_seed(master ^ mix_seed(id));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static Rng substream(std::uint64_t master, std::uint64_t id) {
        return Rng(substream_seed(master, id));
    }

    double gaussian() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }

    Vector gaussian_vector(int n) {
        Vector v(n);
        for (int i = 0; i < n; ++i) v[i] = gaussian();
        return v;
    }

    /// Uniform draw on the unit sphere of R^n.
    Vector unit_vector(int n) {
        while (true) {
            Vector v = gaussian_vector(n);
            const double norm = v.norm();
            if (norm > 1e-12) return v / norm;
        }
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Uniform point on the unit sphere of the subspace, in ambient coordinates.
inline Vector sample_unit_in_subspace(const SubspaceBasis& basis, Rng& rng) {
    return basis.lift(rng.unit_vector(basis.rank()));
}

}  // namespace subsparse
