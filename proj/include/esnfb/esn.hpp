#pragma once

#include <cstddef>
#include <span>

#include "esnfb/linalg.hpp"
#include "esnfb/rng.hpp"

namespace esnfb {

// Construction-time hyperparameters for a leaky echo state network.
struct EsnSpec {
    std::size_t reservoir_size = 50;
    std::size_t tap_size = 5;
    double leak_rate = 0.8;
    double spectral_target = 0.8;
    double input_scale = 0.1;
    double output_init_scale = 0.01;
    std::size_t washout_steps = 100;

    friend bool operator==(const EsnSpec&, const EsnSpec&) = default;
};

// Fixed weights shared by the controller and learner networks.
struct EsnParams {
    std::size_t reservoir_size = 0;
    std::size_t tap_size = 0;
    double leak_rate = 0.0;
    Matrix reservoir;  // r x r
    Matrix input;      // r x tap_size
};

struct EsnState {
    Vector x;
};

// Linear output layer. Adapted online by RLS and read by the controller net.
struct Readout {
    Vector w;
};

struct EsnInit {
    EsnParams params;
    EsnState state;  // washed out; both twins start here
    Readout readout;
};

/**
 * Draws a fresh network. Draw order on `rng`:
 *   1. reservoir entries, row-major, uniform(-0.5, 0.5)       r*r draws
 *   2. input entries, row-major, uniform(-1, 1)               r*tap draws
 *   3. readout entries, normal(0, 1)                          2*r draws
 *   4. washout start state, uniform(-1, 1)                    r draws
 * The reservoir is then rescaled to `spec.spectral_target`, the input matrix
 * multiplied by `spec.input_scale` and the readout by `spec.output_init_scale`.
 *
 * Throws InvalidArgument for out-of-range hyperparameters and DegenerateMatrix
 * if the reservoir draw has zero spectral radius.
 */
EsnInit init_esn(Rng& rng, const EsnSpec& spec);

// x' = (1 - leak) x + leak * tanh(W_r x + W_in window)
EsnState esn_step(const EsnParams& params, const EsnState& state, std::span<const double> window);

// In-place variant used on the hot path; `scratch` must hold reservoir_size entries.
void esn_step_inplace(const EsnParams& params, std::span<double> x, std::span<const double> window,
                      std::span<double> scratch);

// Applies esn_step with an all-zero window `steps` times.
EsnState washout(const EsnParams& params, EsnState state, std::size_t steps);

double esn_output(const Readout& readout, const EsnState& state);

}  // namespace esnfb
