#pragma once

#include "esnfb/rng.hpp"

namespace esnfb {

// A: 2 y+^3 = y^4 / (5 + y-^6) + (7 tanh u)^8   (nominal dynamics)
// B:   y+^3 = y^8 / (7 + y-^6) + (9 tanh u)^3   (after the disturbance switch)
enum class PlantVariant { A, B };

struct PlantState {
    double y_curr = 0.0;
    double y_prev = 0.0;
    PlantVariant variant = PlantVariant::A;

    friend bool operator==(const PlantState&, const PlantState&) = default;
};

// Advances the plant by one step under input `u_bar`. The cube root is the
// real (odd) root. Consumes no randomness. Throws NumericalFailure on a
// non-finite result.
PlantState plant_step(const PlantState& state, double u_bar);

// y + normal(0, noise_std); exactly one normal() per call, even for zero noise.
double sense(double y, Rng& rng, double noise_std);

}  // namespace esnfb
