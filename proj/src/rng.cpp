#include "esnfb/rng.hpp"

#include <cmath>
#include <numbers>

#include "esnfb/error.hpp"

namespace esnfb {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    state += kGolden;
    return mix64(state);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

Rng::Rng(std::uint64_t seed) noexcept : seed_(seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
}

std::uint64_t Rng::next_u64() noexcept {
    ++draws_;
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform01() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double uniform(Rng& rng, double a, double b) {
    if (!(a <= b)) throw InvalidArgument("uniform: lower bound exceeds upper bound");
    const double u = rng.uniform01();
    if (a == b) return a;
    const double x = a + (b - a) * u;
    // rounding can land exactly on b for some (a, b)
    return x < b ? x : std::nextafter(b, a);
}

double normal(Rng& rng, double mean, double std) {
    if (!(std >= 0.0)) throw InvalidArgument("normal: standard deviation must be non-negative");
    const double u1 = 1.0 - rng.uniform01();  // (0, 1]
    const double u2 = rng.uniform01();
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    return mean + std * z;
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) noexcept {
    // mix64 is bijective, so distinct indices under one base seed never collide.
    return mix64(mix64(base_seed) + index);
}

}  // namespace esnfb
