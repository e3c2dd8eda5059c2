#include "esnfb/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "esnfb/error.hpp"

namespace esnfb {
namespace {

void check_window(std::size_t size, std::size_t from, std::size_t to) {
    if (from >= to || to > size) throw InvalidArgument("metric window is empty or exceeds the trace");
}

}  // namespace

double window_rmse(std::span<const double> errors, std::size_t from, std::size_t to) {
    check_window(errors.size(), from, to);
    double s = 0.0;
    for (std::size_t k = from; k < to; ++k) s += errors[k] * errors[k];
    return std::sqrt(s / static_cast<double>(to - from));
}

double window_rmse(const RunTrace& trace, std::size_t from, std::size_t to) {
    return window_rmse(trace.e_tilde, from, to);
}

double window_mean_abs(std::span<const double> values, std::size_t from, std::size_t to) {
    check_window(values.size(), from, to);
    double s = 0.0;
    for (std::size_t k = from; k < to; ++k) s += std::abs(values[k]);
    return s / static_cast<double>(to - from);
}

std::optional<std::size_t> convergence_step(std::span<const double> errors, double tol, std::size_t hold) {
    if (!(tol > 0.0)) throw InvalidArgument("convergence_step: tolerance must be positive");
    if (hold == 0) throw InvalidArgument("convergence_step: hold must be at least 1");
    std::size_t run = 0;
    for (std::size_t k = 0; k < errors.size(); ++k) {
        run = std::abs(errors[k]) < tol ? run + 1 : 0;
        if (run == hold) return k + 1 - hold;
    }
    return std::nullopt;
}

std::optional<std::size_t> convergence_step(const RunTrace& trace, double tol, std::size_t hold) {
    return convergence_step(trace.e_tilde, tol, hold);
}

AggregateSeries aggregate(std::span<const RunTrace> traces) {
    if (traces.empty()) throw InvalidArgument("aggregate: no traces");
    const std::size_t horizon = traces.front().size();
    for (const auto& t : traces)
        if (t.size() != horizon) throw ShapeError("aggregate: traces have different horizons");

    AggregateSeries out;
    out.n_seeds = traces.size();
    const double n = static_cast<double>(traces.size());
    for (std::size_t c = 0; c < kChannelCount; ++c) {
        auto& mean = out.mean[c];
        auto& std = out.std[c];
        mean.assign(horizon, 0.0);
        std.assign(horizon, 0.0);
        const auto ch = kAllChannels[c];
        for (const auto& t : traces) {
            const auto v = t.channel(ch);
            for (std::size_t k = 0; k < horizon; ++k) mean[k] += v[k];
        }
        for (auto& m : mean) m /= n;
        // two-pass variance; sum of squared deviations is order-dependent only
        // at the rounding level
        for (const auto& t : traces) {
            const auto v = t.channel(ch);
            for (std::size_t k = 0; k < horizon; ++k) {
                const double d = v[k] - mean[k];
                std[k] += d * d;
            }
        }
        for (auto& s : std) s = std::sqrt(s / n);
    }
    return out;
}

SampleStats describe(std::span<const double> values) {
    SampleStats st;
    st.n = values.size();
    if (values.empty()) return st;
    double s = 0.0;
    for (double v : values) s += v;
    st.mean = s / static_cast<double>(st.n);
    double ss = 0.0;
    for (double v : values) ss += (v - st.mean) * (v - st.mean);
    st.std = std::sqrt(ss / static_cast<double>(st.n));
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = st.n / 2;
    st.median = st.n % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
    return st;
}

}  // namespace esnfb
