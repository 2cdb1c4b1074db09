#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

namespace mole {

/// Deterministic uniform sampling on top of std::mt19937_64. The standard
/// fixes the engine's output bit-for-bit but not the distributions, so the
/// draws here use plain modulo rejection to stay reproducible across
/// platforms and library versions.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / n * n;
        std::uint64_t x = engine_();
        while (x >= limit) x = engine_();
        return x % n;
    }

    /// Uniform in [lo, hi], inclusive.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    bool coin() { return below(2) == 1; }

    /// Stable per-index substream derivation (splitmix64 finalizer).
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 engine_;
};

/// k distinct indices drawn uniformly from [0, n), k <= n. Partial
/// Fisher-Yates, so the draw count is stable for reproducibility.
inline std::vector<std::size_t> sample_distinct(SeededRng& rng, std::size_t n, std::size_t k) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = 0; i < k && i < n; ++i)
        std::swap(order[i], order[i + rng.below(n - i)]);
    order.resize(k < n ? k : n);
    return order;
}

} // namespace mole
