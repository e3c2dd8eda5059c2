#include "esnfb/esn.hpp"

#include <cmath>
#include <string>

#include "esnfb/error.hpp"

namespace esnfb {

EsnInit init_esn(Rng& rng, const EsnSpec& spec) {
    if (spec.reservoir_size == 0) throw InvalidArgument("init_esn: reservoir size must be positive");
    if (spec.tap_size == 0) throw InvalidArgument("init_esn: tap size must be positive");
    if (!(spec.leak_rate >= 0.0 && spec.leak_rate < 1.0))
        throw InvalidArgument("init_esn: leak rate must lie in [0, 1)");
    if (!(spec.spectral_target > 0.0)) throw InvalidArgument("init_esn: spectral target must be positive");
    if (!(spec.input_scale >= 0.0) || !(spec.output_init_scale >= 0.0))
        throw InvalidArgument("init_esn: scales must be non-negative");

    const std::size_t r = spec.reservoir_size;
    const std::size_t tap = spec.tap_size;

    Matrix reservoir(r, r);
    for (auto& x : reservoir.entries()) x = uniform(rng, -0.5, 0.5);
    Matrix input(r, tap);
    for (auto& x : input.entries()) x = uniform(rng, -1.0, 1.0);
    Readout readout{Vector(r)};
    for (auto& w : readout.w) w = normal(rng, 0.0, 1.0);
    EsnState start{Vector(r)};
    for (auto& x : start.x) x = uniform(rng, -1.0, 1.0);

    EsnInit init;
    init.params.reservoir_size = r;
    init.params.tap_size = tap;
    init.params.leak_rate = spec.leak_rate;
    init.params.reservoir = scale_to_spectral_radius(reservoir, spec.spectral_target);
    init.params.input = spec.input_scale * std::move(input);
    for (auto& w : readout.w) w *= spec.output_init_scale;
    init.readout = std::move(readout);
    init.state = washout(init.params, std::move(start), spec.washout_steps);
    return init;
}

void esn_step_inplace(const EsnParams& params, std::span<double> x, std::span<const double> window,
                      std::span<double> scratch) {
    if (window.size() != params.tap_size) {
        throw ShapeError("esn_step: window of length " + std::to_string(window.size()) +
                         ", expected " + std::to_string(params.tap_size));
    }
    if (x.size() != params.reservoir_size || scratch.size() != params.reservoir_size)
        throw ShapeError("esn_step: state length does not match reservoir size");

    const double leak = params.leak_rate;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double a = 0.0;
        const auto wr = params.reservoir.row(i);
        for (std::size_t j = 0; j < x.size(); ++j) a += wr[j] * x[j];
        const auto win = params.input.row(i);
        for (std::size_t j = 0; j < window.size(); ++j) a += win[j] * window[j];
        scratch[i] = a;
    }
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = (1.0 - leak) * x[i] + leak * std::tanh(scratch[i]);
}

EsnState esn_step(const EsnParams& params, const EsnState& state, std::span<const double> window) {
    EsnState next = state;
    Vector scratch(params.reservoir_size);
    esn_step_inplace(params, next.x, window, scratch);
    return next;
}

EsnState washout(const EsnParams& params, EsnState state, std::size_t steps) {
    const Vector zeros(params.tap_size, 0.0);
    Vector scratch(params.reservoir_size);
    for (std::size_t k = 0; k < steps; ++k) esn_step_inplace(params, state.x, zeros, scratch);
    return state;
}

double esn_output(const Readout& readout, const EsnState& state) {
    if (readout.w.size() != state.x.size()) throw ShapeError("esn_output: readout/state length mismatch");
    return dot(readout.w, state.x);
}

}  // namespace esnfb
