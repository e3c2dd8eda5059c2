#include "esnfb/plant.hpp"

#include <cmath>

#include "esnfb/error.hpp"

namespace esnfb {

PlantState plant_step(const PlantState& state, double u_bar) {
    const double y = state.y_curr;
    const double y_prev = state.y_prev;
    const double y_prev6 = std::pow(y_prev, 6);
    double rhs = 0.0;
    switch (state.variant) {
        case PlantVariant::A:
            rhs = (std::pow(y, 4) / (5.0 + y_prev6) + std::pow(7.0 * std::tanh(u_bar), 8)) / 2.0;
            break;
        case PlantVariant::B:
            rhs = std::pow(y, 8) / (7.0 + y_prev6) + std::pow(9.0 * std::tanh(u_bar), 3);
            break;
    }
    const double next = std::cbrt(rhs);
    if (!std::isfinite(next)) throw NumericalFailure("plant_step: non-finite plant output");
    return {next, y, state.variant};
}

double sense(double y, Rng& rng, double noise_std) {
    return y + normal(rng, 0.0, noise_std);
}

}  // namespace esnfb
