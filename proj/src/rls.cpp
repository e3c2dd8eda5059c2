#include "esnfb/rls.hpp"

#include <cmath>

#include "esnfb/error.hpp"

namespace esnfb {

RlsState rls_init(double alpha, std::size_t reservoir_size, double lambda) {
    if (!(alpha > 0.0)) throw InvalidArgument("rls_init: learning rate must be positive");
    if (!(lambda > 0.0 && lambda <= 1.0)) throw InvalidArgument("rls_init: forgetting factor must lie in (0, 1]");
    RlsState state;
    state.p = (1.0 / alpha) * Matrix::identity(reservoir_size);
    state.alpha = alpha;
    state.lambda = lambda;
    return state;
}

RlsUpdateResult rls_update(RlsState& state, Readout& readout, std::span<const double> x, double target) {
    const std::size_t r = state.p.rows();
    if (x.size() != r || readout.w.size() != r) throw ShapeError("rls_update: regressor length mismatch");
    if (!std::isfinite(target)) throw NumericalFailure("rls_update: non-finite target");

    const double e = dot(readout.w, x) - target;

    Vector px(r);
    matvec_into(state.p, x, px);
    const double lambda = state.lambda;
    const double gain_den = lambda * (lambda + dot(x, px));
    Matrix& p = state.p;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) p(i, j) = p(i, j) / lambda - px[i] * px[j] / gain_den;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j) {
            const double m = 0.5 * (p(i, j) + p(j, i));
            p(i, j) = m;
            p(j, i) = m;
        }

    matvec_into(p, x, px);
    for (std::size_t i = 0; i < r; ++i) readout.w[i] -= e * px[i];

    if (!std::isfinite(e) || !p.all_finite()) throw NumericalFailure("rls_update: non-finite inverse-correlation estimate");
    for (double w : readout.w)
        if (!std::isfinite(w)) throw NumericalFailure("rls_update: non-finite readout weight");

    return {e};
}

}  // namespace esnfb
