#include <doctest.h>

#include <cmath>
#include <cstring>
#include <set>
#include <vector>

#include "esnfb/error.hpp"
#include "esnfb/rng.hpp"

using namespace esnfb;

TEST_CASE("uniform on a degenerate interval returns the endpoint") {
    Rng rng(1);
    CHECK(uniform(rng, 0.0, 0.0) == 0.0);
    CHECK(uniform(rng, 2.5, 2.5) == 2.5);
}

TEST_CASE("uniform rejects an inverted range") {
    Rng rng(1);
    CHECK_THROWS_AS(uniform(rng, 1.0, 0.0), InvalidArgument);
}

TEST_CASE("uniform stays in its half-open support") {
    Rng rng(7);
    for (int i = 0; i < 10'000; ++i) {
        const double x = uniform(rng, -0.5, 0.5);
        REQUIRE(x >= -0.5);
        REQUIRE(x < 0.5);
    }
}

TEST_CASE("uniform(-1, 1) sample mean converges to zero") {
    Rng rng(11);
    double s = 0.0;
    constexpr int n = 1'000'000;
    for (int i = 0; i < n; ++i) s += uniform(rng, -1.0, 1.0);
    CHECK(std::abs(s / n) < 0.01);
}

TEST_CASE("normal with zero std returns the mean exactly") {
    Rng rng(3);
    CHECK(normal(rng, 5.0, 0.0) == 5.0);
}

TEST_CASE("normal rejects a negative std") {
    Rng rng(3);
    CHECK_THROWS_AS(normal(rng, 0.0, -1.0), InvalidArgument);
}

TEST_CASE("normal sample moments match the parameters") {
    constexpr int n = 1'000'000;
    SUBCASE("std of N(0, 0.01)") {
        Rng rng(21);
        double s = 0.0, ss = 0.0;
        for (int i = 0; i < n; ++i) {
            const double x = normal(rng, 0.0, 0.01);
            s += x;
            ss += x * x;
        }
        const double mean = s / n;
        const double sd = std::sqrt(ss / n - mean * mean);
        CHECK(std::abs(sd - 0.01) < 0.05 * 0.01);
    }
    SUBCASE("mean of N(1, 0.3)") {
        Rng rng(22);
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += normal(rng, 1.0, 0.3);
        CHECK(std::abs(s / n - 1.0) < 0.01);
    }
}

TEST_CASE("equal seeds give bitwise-equal streams") {
    Rng a(12345), b(12345);
    for (int i = 0; i < 100'000; ++i) {
        const double x = normal(a, 0.0, 1.0);
        const double y = normal(b, 0.0, 1.0);
        REQUIRE(std::memcmp(&x, &y, sizeof x) == 0);
    }
    Rng c(12346);
    Rng d(12345);
    CHECK(c.next_u64() != d.next_u64());
}

TEST_CASE("draw accounting: uniform is one draw, normal is two") {
    Rng rng(5);
    (void)uniform(rng, 0.0, 1.0);
    CHECK(rng.draws() == 1);
    (void)normal(rng, 0.0, 1.0);
    CHECK(rng.draws() == 3);
    (void)normal(rng, 4.0, 0.0);
    CHECK(rng.draws() == 5);
    (void)uniform(rng, 2.0, 2.0);
    CHECK(rng.draws() == 6);
}

TEST_CASE("derive_seed is injective over the episode index") {
    for (std::uint64_t base : {0ULL, 1ULL, 0xDEADBEEFULL}) {
        std::set<std::uint64_t> seen;
        for (std::uint64_t i = 0; i < 10'000; ++i) seen.insert(derive_seed(base, i));
        CHECK(seen.size() == 10'000);
    }
    CHECK(derive_seed(0, 0) != derive_seed(1, 0));
}
