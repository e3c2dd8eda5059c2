#include <doctest.h>

#include <cmath>
#include <numbers>

#include "esnfb/signals.hpp"

using namespace esnfb;

TEST_CASE("step reference") {
    const auto sig = step_signal(2000, {10, 1.0});
    CHECK(reference_at(sig, 5) == 0.0);
    CHECK(reference_at(sig, 10) == 1.0);
    CHECK(reference_at(sig, 1999) == 1.0);
    CHECK(future_window(sig, 7, 5) == Vector{0, 0, 1, 1, 1});
}

TEST_CASE("complex reference at k = 0") {
    const auto sig = complex_signal();
    const auto& c = std::get<ComplexParams>(sig.shape);
    CHECK(reference_at(sig, 0) == doctest::Approx(c.offset + c.amp2 * std::sin(c.phase2)));
}

TEST_CASE("constant signal window") {
    // zero-amplitude complex signal is the constant offset
    const auto sig = complex_signal(100, {2.5, 0.0, 10.0, 0.0, 10.0, 0.0});
    CHECK(future_window(sig, 3, 5) == Vector(5, 2.5));
}

TEST_CASE("hold-last beyond the horizon") {
    const auto sig = complex_signal(6000);
    const double last = reference_at(sig, 6000);
    CHECK(reference_at(sig, 6001) == last);
    CHECK(reference_at(sig, 100000) == last);
    CHECK(future_window(sig, 6000, 5) == Vector(5, last));
}

TEST_CASE("window identity and amplitude bound") {
    const auto sig = complex_signal(6000);
    const auto& c = std::get<ComplexParams>(sig.shape);
    double lo = 1e9;
    for (std::size_t k = 0; k < 6100; k += 7) {
        const auto w = future_window(sig, k, 5);
        for (std::size_t i = 0; i < 5; ++i) REQUIRE(w[i] == reference_at(sig, k + 1 + i));
        const double v = reference_at(sig, k);
        CHECK(std::abs(v - c.offset) <= c.amp1 + c.amp2);
        lo = std::min(lo, v);
    }
    CHECK(lo > 0.1);
    CHECK(sig.amplitude() == doctest::Approx(1.8));
    CHECK(step_signal().amplitude() == 1.0);
}

TEST_CASE("future_window rejects delta = 0") {
    CHECK_THROWS(future_window(step_signal(), 0, 0));
}
