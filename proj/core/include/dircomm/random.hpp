#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace dircomm {

/// SplitMix64 finalizer. Used to derive independent stream seeds from a
/// master seed so restarts, null replicates and benchmark replicates never
/// share a generator state.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// derive_seed(master, a, b, ...) = mix64(...mix64(mix64(master) ^ a) ^ b...)
template <typename... Ts>
constexpr std::uint64_t derive_seed(std::uint64_t master, Ts... path) noexcept {
    std::uint64_t s = mix64(master);
    ((s = mix64(s ^ static_cast<std::uint64_t>(path))), ...);
    return s;
}

/// Thin wrapper over std::mt19937_64. The engine's output sequence is fixed by
/// the standard; the draws below avoid std::*_distribution so results do not
/// depend on the standard library implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound) {
        // Lemire's nearly-divisionless method with rejection.
        std::uint64_t x = engine_();
        __uint128_t m = static_cast<__uint128_t>(x) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                x = engine_();
                m = static_cast<__uint128_t>(x) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
};

} // namespace dircomm
