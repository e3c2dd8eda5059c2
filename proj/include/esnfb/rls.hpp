#pragma once

#include <cstddef>
#include <span>

#include "esnfb/esn.hpp"
#include "esnfb/linalg.hpp"

namespace esnfb {

// Exponentially weighted recursive least squares on the shared readout.
struct RlsState {
    Matrix p;  // running inverse-correlation estimate, r x r
    double alpha = 1.0;
    double lambda = 1.0 - 1e-3;
};

struct RlsUpdateResult {
    double error = 0.0;  // a-priori error w_old . x - target
};

// P0 = I / alpha. Throws InvalidArgument unless alpha > 0 and 0 < lambda <= 1.
RlsState rls_init(double alpha, std::size_t reservoir_size, double lambda = 1.0 - 1e-3);

/**
 * One RLS step against `target`, applied in place to `state` and `readout`:
 *
 *   e     = w . x - target
 *   P_new = P / lambda - (P x)(P x)^T / (lambda (lambda + x^T P x))
 *   w_new = w - e * (P_new x)
 *
 * P_new is then symmetrized as (P + P^T) / 2. Throws ShapeError on length
 * mismatch and NumericalFailure if P or w becomes non-finite (for instance
 * when a small forgetting factor inflates P without excitation).
 */
RlsUpdateResult rls_update(RlsState& state, Readout& readout, std::span<const double> x, double target);

}  // namespace esnfb
