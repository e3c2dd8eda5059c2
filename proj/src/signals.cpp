#include "esnfb/signals.hpp"

#include <algorithm>
#include <cmath>

#include "esnfb/error.hpp"

namespace esnfb {

double ReferenceSignal::amplitude() const noexcept {
    if (const auto* s = std::get_if<StepParams>(&shape)) return std::abs(s->amplitude);
    const auto& c = std::get<ComplexParams>(shape);
    return std::abs(c.amp1) + std::abs(c.amp2);
}

ReferenceSignal step_signal(std::size_t horizon, StepParams params) {
    return {params, horizon};
}

ReferenceSignal complex_signal(std::size_t horizon, ComplexParams params) {
    return {params, horizon};
}

double reference_at(const ReferenceSignal& sig, std::size_t k) noexcept {
    k = std::min(k, sig.horizon);
    if (const auto* s = std::get_if<StepParams>(&sig.shape)) return k < s->rise_step ? 0.0 : s->amplitude;
    const auto& c = std::get<ComplexParams>(sig.shape);
    const double t = static_cast<double>(k);
    constexpr double two_pi = 2.0 * std::numbers::pi;
    return c.offset + c.amp1 * std::sin(two_pi * t / c.period1) + c.amp2 * std::sin(two_pi * t / c.period2 + c.phase2);
}

Vector future_window(const ReferenceSignal& sig, std::size_t k, std::size_t delta) {
    if (delta == 0) throw InvalidArgument("future_window: delta must be at least 1");
    Vector w(delta);
    for (std::size_t i = 0; i < delta; ++i) w[i] = reference_at(sig, k + 1 + i);
    return w;
}

}  // namespace esnfb
