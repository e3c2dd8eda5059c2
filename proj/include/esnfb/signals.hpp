#pragma once

#include <cstddef>
#include <numbers>
#include <variant>

#include "esnfb/linalg.hpp"

namespace esnfb {

struct StepParams {
    std::size_t rise_step = 10;
    double amplitude = 1.0;

    friend bool operator==(const StepParams&, const StepParams&) = default;
};

// offset + amp1 sin(2 pi k / period1) + amp2 sin(2 pi k / period2 + phase2)
struct ComplexParams {
    double offset = 3.0;
    double amp1 = 1.2;
    double period1 = 1000.0;
    double amp2 = 0.6;
    double period2 = 333.0;
    double phase2 = std::numbers::pi / 4.0;

    friend bool operator==(const ComplexParams&, const ComplexParams&) = default;
};

struct ReferenceSignal {
    std::variant<StepParams, ComplexParams> shape = StepParams{};
    std::size_t horizon = 2000;

    // Peak deviation from the resting level: the step height, or amp1 + amp2.
    [[nodiscard]] double amplitude() const noexcept;

    friend bool operator==(const ReferenceSignal&, const ReferenceSignal&) = default;
};

ReferenceSignal step_signal(std::size_t horizon = 2000, StepParams params = {});
ReferenceSignal complex_signal(std::size_t horizon = 6000, ComplexParams params = {});

// Indices past the horizon hold the value at the horizon.
double reference_at(const ReferenceSignal& sig, std::size_t k) noexcept;

// [reference_at(k + 1), ..., reference_at(k + delta)]
Vector future_window(const ReferenceSignal& sig, std::size_t k, std::size_t delta);

}  // namespace esnfb
