#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace uassoc::rng {

// All randomized code in this project draws through the helpers below instead
// of <random> distributions, whose output is implementation-defined. The
// engine itself (std::mt19937_64) is specified bit-exactly by the standard,
// so a seed reproduces the same stream on any platform.
using Engine = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives an independent stream seed from a base seed and a stream tag.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t state = seed ^ (0xbf58476d1ce4e5b9ULL * (tag + 1));
    return splitmix64(state);
}

/// Unbiased draw in [0, bound) via rejection sampling. bound must be > 0.
inline std::uint64_t bounded_u64(Engine& eng, std::uint64_t bound) {
    const std::uint64_t threshold = (0ULL - bound) % bound;
    for (;;) {
        const std::uint64_t r = eng();
        if (r >= threshold) {
            return r % bound;
        }
    }
}

/// Inclusive integer draw in [lo, hi].
inline int uniform_int(Engine& eng, int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) -
                                                 static_cast<std::int64_t>(lo)) + 1;
    return lo + static_cast<int>(bounded_u64(eng, span));
}

/// Index draw in [0, n).
inline std::size_t uniform_index(Engine& eng, std::size_t n) {
    return static_cast<std::size_t>(bounded_u64(eng, n));
}

/// Real draw in [lo, hi). Degenerate intervals return lo.
inline double uniform_real(Engine& eng, double lo, double hi) {
    const double unit = static_cast<double>(eng() >> 11) * 0x1.0p-53;
    return lo + unit * (hi - lo);
}

/// Fisher-Yates shuffle driven by bounded_u64.
template <typename T>
void shuffle(std::vector<T>& values, Engine& eng) {
    for (std::size_t i = values.size(); i > 1; --i) {
        const std::size_t j = uniform_index(eng, i);
        std::swap(values[i - 1], values[j]);
    }
}

/// Identity permutation 0..n-1, shuffled.
inline std::vector<std::size_t> random_permutation(std::size_t n, Engine& eng) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) {
        perm[i] = i;
    }
    shuffle(perm, eng);
    return perm;
}

}  // namespace uassoc::rng
