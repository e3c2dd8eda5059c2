#pragma once

#include <array>
#include <cstdint>

namespace esnfb {

/**
 * Seeded xoshiro256** generator.
 *
 * The 256-bit state is expanded from the 64-bit seed with splitmix64, so equal
 * seeds give bit-identical streams. Draw accounting (each call to next_u64()
 * is one draw):
 *
 *   uniform01 / uniform   1 draw
 *   normal                2 draws (Box-Muller, cosine branch only, no caching)
 *
 * An Rng is single-owner. Episodes get their own generator through
 * derive_seed(); nothing is shared across episodes.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept;

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] std::uint64_t draws() const noexcept { return draws_; }

    std::uint64_t next_u64() noexcept;

    // 53-bit resolution sample in [0, 1).
    double uniform01() noexcept;

private:
    std::array<std::uint64_t, 4> s_{};
    std::uint64_t seed_;
    std::uint64_t draws_ = 0;
};

// Sample in [a, b). Throws InvalidArgument if a > b; returns a when a == b.
double uniform(Rng& rng, double a, double b);

// Gaussian sample with the given mean and standard deviation. Throws
// InvalidArgument if std < 0.
double normal(Rng& rng, double mean, double std);

// Seed for episode `index` of a sweep started from `base_seed`. Injective in
// `index` for a fixed base seed (splitmix64 finalizer is a bijection).
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) noexcept;

}  // namespace esnfb
