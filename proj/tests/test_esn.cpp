#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "esnfb/error.hpp"
#include "esnfb/esn.hpp"

using namespace esnfb;

namespace {

EsnParams scalar_net(double leak, double wr, double win) {
    return {1, 1, leak, Matrix(1, 1, {wr}), Matrix(1, 1, {win})};
}

double norm(const Vector& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("esn_step scalar hand evaluations") {
    CHECK(esn_step(scalar_net(1.0, 0.0, 2.0), {{0.0}}, Vector{0.5}).x[0] ==
          doctest::Approx(std::tanh(1.0)).epsilon(1e-15));
    CHECK(esn_step(scalar_net(1.0, 0.0, 2.0), {{0.0}}, Vector{0.5}).x[0] == doctest::Approx(0.761594).epsilon(1e-6));
    const double expected = 0.2 * 0.1 + 0.8 * std::tanh(0.25);
    const double got = esn_step(scalar_net(0.8, 0.5, 1.0), {{0.1}}, Vector{0.2}).x[0];
    CHECK(got == doctest::Approx(expected).epsilon(1e-15));
    CHECK(got == doctest::Approx(0.21594).epsilon(1e-5));
}

TEST_CASE("zero leak rate freezes the state") {
    Rng rng(1);
    EsnSpec spec;
    spec.leak_rate = 0.0;
    const auto init = init_esn(rng, spec);
    const EsnState s{Vector(50, 0.3)};
    CHECK(esn_step(init.params, s, Vector{1, 2, 3, 4, 5}).x == s.x);
}

TEST_CASE("esn_step rejects a wrong window length") {
    CHECK_THROWS_AS(esn_step(scalar_net(0.5, 0.0, 1.0), {{0.0}}, Vector{1.0, 2.0}), ShapeError);
}

TEST_CASE("esn_output") {
    CHECK(esn_output({Vector{0, 0}}, {Vector{0.3, -0.9}}) == 0.0);
    CHECK(esn_output({Vector{0, 1, 0}}, {Vector{0.1, 0.2, 0.3}}) == 0.2);
    CHECK(esn_output({Vector{1, 2}}, {Vector{0.5, -0.25}}) == 0.0);
    CHECK_THROWS_AS(esn_output({Vector{1}}, {Vector{1, 2}}), ShapeError);
}

TEST_CASE("init_esn scaling and draws") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Rng rng(seed);
        const auto init = init_esn(rng, EsnSpec{});
        CHECK(std::abs(spectral_radius(init.params.reservoir) - 0.8) < 1e-6);
        double max_in = 0.0;
        for (double x : init.params.input.entries()) max_in = std::max(max_in, std::abs(x));
        CHECK(max_in <= 0.1);
        CHECK(init.readout.w.size() == 50);
        // r*r + r*tap uniforms, 2r for the normal readout, r for the start state
        CHECK(rng.draws() == 50 * 50 + 50 * 5 + 2 * 50 + 50);
    }
}

TEST_CASE("init_esn with zero output scale gives a zero readout") {
    Rng rng(3);
    EsnSpec spec;
    spec.output_init_scale = 0.0;
    const auto init = init_esn(rng, spec);
    CHECK(std::all_of(init.readout.w.begin(), init.readout.w.end(), [](double w) { return w == 0.0; }));
}

TEST_CASE("init_esn validates hyperparameters") {
    Rng rng(3);
    EsnSpec spec;
    spec.leak_rate = 1.0;
    CHECK_THROWS_AS(init_esn(rng, spec), InvalidArgument);
    spec = {};
    spec.reservoir_size = 0;
    CHECK_THROWS_AS(init_esn(rng, spec), InvalidArgument);
}

TEST_CASE("washout") {
    Rng rng(4);
    const auto init = init_esn(rng, EsnSpec{});
    const auto& params = init.params;

    SUBCASE("zero is a fixed point") {
        CHECK(washout(params, {Vector(50, 0.0)}, 100).x == Vector(50, 0.0));
    }
    SUBCASE("zero steps is the identity") {
        const EsnState s{Vector(50, 0.7)};
        CHECK(washout(params, s, 0).x == s.x);
    }
    SUBCASE("zero-input dynamics contract from a random start") {
        EsnState s{Vector(50)};
        for (auto& x : s.x) x = uniform(rng, -1.0, 1.0);
        const double before = norm(s.x);
        CHECK(norm(washout(params, s, 100).x) < before);
    }
}

TEST_CASE("states stay bounded under leaky tanh updates") {
    Rng rng(9);
    const auto init = init_esn(rng, EsnSpec{});
    for (int trial = 0; trial < 50; ++trial) {
        EsnState s{Vector(50)};
        for (auto& x : s.x) x = uniform(rng, -1.0, 1.0);
        Vector window(5);
        for (auto& w : window) w = uniform(rng, -100.0, 100.0);
        const auto next = esn_step(init.params, s, window);
        for (double x : next.x) {
            REQUIRE(x > -1.0);
            REQUIRE(x < 1.0);
        }
    }
    // from a far-away start, after k updates each component lies within
    // (1-leak)^k x0 +- 1
    EsnState s{Vector(50, 40.0)};
    const Vector x0 = s.x;
    const double leak = init.params.leak_rate;
    for (int k = 1; k <= 6; ++k) {
        s = esn_step(init.params, s, Vector(5, 1.0));
        const double decay = std::pow(1.0 - leak, k);
        for (std::size_t i = 0; i < 50; ++i) {
            CHECK(s.x[i] > decay * x0[i] - 1.0);
            CHECK(s.x[i] < decay * x0[i] + 1.0);
        }
    }
}

TEST_CASE("echo-state contraction: trajectories forget their initial state") {
    int converged = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(seed);
        const auto init = init_esn(rng, EsnSpec{});
        EsnState a{Vector(50)}, b{Vector(50)};
        for (auto& x : a.x) x = uniform(rng, -1.0, 1.0);
        for (auto& x : b.x) x = uniform(rng, -1.0, 1.0);
        double d0 = 0.0;
        for (std::size_t i = 0; i < 50; ++i) d0 += (a.x[i] - b.x[i]) * (a.x[i] - b.x[i]);
        d0 = std::sqrt(d0);
        Vector window(5);
        for (int k = 0; k < 500; ++k) {
            for (auto& w : window) w = uniform(rng, 0.0, 4.0);
            a = esn_step(init.params, a, window);
            b = esn_step(init.params, b, window);
        }
        double d = 0.0;
        for (std::size_t i = 0; i < 50; ++i) d += (a.x[i] - b.x[i]) * (a.x[i] - b.x[i]);
        if (std::sqrt(d) < 1e-3 * d0) ++converged;
    }
    CHECK(converged == 20);
}
