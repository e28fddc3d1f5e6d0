#pragma once

#include <cstdint>
#include <random>

namespace swarmshop {

// Finalizer of the splitmix64 generator. Scrambles user-supplied seeds so
// that nearby values (1, 2, 3, ...) produce unrelated streams.
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Folds one stream component into a seed. Chained calls derive child seeds
// from an index tuple, e.g. mix_seed(mix_seed(base, generation), member),
// which keeps concurrent work reproducible regardless of execution order.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t component) {
    return splitmix64(seed ^ (component + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2)));
}

// Seedable uniform source used by every stochastic component.
//
// std::mt19937_64's raw output sequence is pinned down by the standard; the
// floating-point mappings below are done by hand because the library
// distributions (std::uniform_real_distribution and friends) are allowed to
// differ between standard-library implementations, which would break
// run-for-run reproducibility across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on the open interval (0, 1).
    double open01() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Uniform on [lo, hi).
    double uniform(double lo, double hi) {
        const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }

    // Uniform index in [0, n). n must be nonzero.
    std::size_t index(std::size_t n) {
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(engine_()) * n) >> 64);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace swarmshop
